#include "hilbcone/expr.hpp"

#include <cctype>

namespace hilbcone {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    ClassExpr run() {
        ClassExpr out;
        skip();
        Rational sign = 1;
        if (peek() == '-' || peek() == '+') {
            if (peek() == '-') sign = -1;
            ++i_;
            skip();
        }
        out.terms.push_back(term(sign));
        for (;;) {
            skip();
            if (i_ == s_.size()) break;
            if (peek() != '+' && peek() != '-') fail({"'+'", "'-'", "end of input"});
            sign = peek() == '-' ? Rational(-1) : Rational(1);
            ++i_;
            skip();
            out.terms.push_back(term(sign));
        }
        return out;
    }

private:
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    bool at_digit() const { return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])); }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string found = i_ < s_.size() ? "'" + std::string(1, s_[i_]) + "'" : "end of input";
        throw ParseError(i_, std::move(expected), found);
    }

    mpz_class integer() {
        std::size_t start = i_;
        while (at_digit()) ++i_;
        return mpz_class(std::string(s_.substr(start, i_ - start)));
    }

    Rational coefficient() {
        mpz_class num = integer();
        std::size_t save = i_;
        skip();
        if (peek() != '/') {
            i_ = save;
            return Rational(num);
        }
        ++i_;
        skip();
        if (!at_digit()) fail({"integer"});
        std::size_t den_at = i_;
        mpz_class den = integer();
        if (den == 0) {
            i_ = den_at;
            fail({"nonzero integer"});
        }
        return Rational(num, den);
    }

    std::string label() {
        std::size_t n = scan_label(s_, i_);
        if (n == 0) fail({"label"});
        std::string out = normalize_label(s_.substr(i_, n));
        i_ += n;
        return out;
    }

    Term term(const Rational& sign) {
        if (at_digit()) {
            Rational c = coefficient();
            std::size_t save = i_;
            skip();
            if (peek() != '*') {
                i_ = save;
                return {sign * c, {}};
            }
            ++i_;
            skip();
            std::string l = label();  // before the brace-init: GCC 11 leaks earlier members if it throws
            return {sign * c, std::move(l)};
        }
        if (scan_label(s_, i_) == 0) fail({"coefficient", "label"});
        return {sign, label()};
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

ClassExpr parse_expr(std::string_view src) { return Parser(src).run(); }

CycleClass to_class(const ClassExpr& e, const GradedBasis& basis) {
    std::vector<Rational> v(basis.size());
    for (const auto& t : e.terms) {
        if (t.label.empty()) {
            if (t.coef.is_zero()) continue;
            throw UnknownLabelError("bare coefficient " + t.coef.str() + " is not a class in basis " + basis.id);
        }
        auto i = basis.index_of(t.label);
        if (!i) throw UnknownLabelError("label '" + t.label + "' is not in basis " + basis.id);
        v[*i] += t.coef;
    }
    return {basis.id, QVector(std::move(v))};
}

ClassExpr to_expr(const CycleClass& c, const GradedBasis& basis) {
    if (c.coords.size() != basis.size())
        throw DimensionError("class with " + std::to_string(c.coords.size()) + " coordinates in basis " + basis.id);
    ClassExpr e;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!c.coords[i].is_zero()) e.terms.push_back({c.coords[i], basis.labels[i]});
    return e;
}

std::string render(const ClassExpr& e) {
    std::string out;
    for (const auto& t : e.terms) {
        if (t.coef.is_zero()) continue;
        Rational mag = t.coef.abs();
        if (out.empty()) {
            if (t.coef.sign() < 0) out += "-";
        } else {
            out += t.coef.sign() < 0 ? " - " : " + ";
        }
        if (t.label.empty()) {
            out += mag.str();
        } else {
            if (mag != Rational(1)) out += mag.str() + "*";
            out += t.label;
        }
    }
    return out.empty() ? "0" : out;
}

std::string render(const CycleClass& c, const GradedBasis& basis) { return render(to_expr(c, basis)); }

}  // namespace hilbcone
