#include <cctype>
#include <cstdio>

#include <json.hpp>

#include "hilbcone/worksheets.hpp"

namespace hilbcone {

std::string text_report(const std::vector<CheckReport>& reports) {
    std::string out;
    std::size_t passed = 0;
    for (const auto& r : reports) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.1f ms", r.elapsed_ms);
        std::string status = status_name(r.status);
        for (auto& c : status) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        out += status + "  " + r.id + "  " + r.title + "  (" + ms + ")\n";
        for (const auto& d : r.details) out += d + "\n";
        if (r.status == Status::Pass) ++passed;
    }
    out += std::to_string(passed) + "/" + std::to_string(reports.size()) + " checks passed\n";
    return out;
}

std::string json_report(const std::vector<CheckReport>& reports) {
    nlohmann::ordered_json doc;
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json e;
        e["id"] = r.id;
        e["title"] = r.title;
        e["status"] = status_name(r.status);
        e["details"] = r.details;
        e["elapsed_ms"] = r.elapsed_ms;
        doc["checks"].push_back(e);
    }
    doc["all_passed"] = all_passed(reports);
    return doc.dump(2) + "\n";
}

}  // namespace hilbcone
