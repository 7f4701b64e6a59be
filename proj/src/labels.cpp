#include <algorithm>
#include <cctype>

#include "hilbcone/chowdata.hpp"

namespace hilbcone {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::size_t skip_ws(std::string_view s, std::size_t i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return i;
}

// End of `identifier ['^' integer]` starting at i, or i when there is no atom.
std::size_t scan_atom(std::string_view s, std::size_t i) {
    if (i >= s.size() || !ident_start(s[i])) return i;
    std::size_t j = i + 1;
    while (j < s.size() && ident_char(s[j])) ++j;
    std::size_t k = skip_ws(s, j);
    if (k < s.size() && s[k] == '^') {
        std::size_t d = skip_ws(s, k + 1);
        std::size_t e = d;
        while (e < s.size() && digit(s[e])) ++e;
        if (e > d) return e;
    }
    return j;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (std::tolower(a[i - 1]) == std::tolower(b[j - 1]) ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

std::size_t scan_label(std::string_view text, std::size_t pos) {
    if (pos < text.size() && text[pos] == '[') {
        auto close = text.find(']', pos + 1);
        if (close == std::string_view::npos || close == pos + 1) return 0;
        return close + 1 - pos;
    }
    std::size_t end = scan_atom(text, pos);
    if (end == pos) return 0;
    for (;;) {
        std::size_t star = skip_ws(text, end);
        if (star >= text.size() || text[star] != '*') break;
        std::size_t next = skip_ws(text, star + 1);
        std::size_t after = scan_atom(text, next);
        if (after == next) break;  // '*' followed by a coefficient or nothing is not part of the label
        end = after;
    }
    return end - pos;
}

std::string normalize_label(std::string_view label) {
    std::string out;
    for (char c : label)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

bool is_valid_label(std::string_view label) {
    return !label.empty() && scan_label(label, 0) == label.size() && normalize_label(label) == label;
}

std::vector<std::string> near_matches(const Dataset& ds, std::string_view name, std::size_t limit) {
    std::vector<std::pair<std::size_t, std::string>> scored;
    const std::size_t cutoff = std::max<std::size_t>(2, name.size() / 3);
    auto consider = [&](const std::string& candidate) {
        std::size_t d = edit_distance(name, candidate);
        if (d <= cutoff) scored.emplace_back(d, candidate);
    };
    for (const auto& c : ds.classes) consider(c.name);
    for (const auto& b : ds.bases)
        for (const auto& l : b.labels) consider(l);
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (auto& [d, s] : scored) {
        if (std::find(out.begin(), out.end(), s) != out.end()) continue;
        out.push_back(std::move(s));
        if (out.size() == limit) break;
    }
    return out;
}

}  // namespace hilbcone
