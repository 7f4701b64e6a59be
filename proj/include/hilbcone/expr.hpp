#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hilbcone/chowdata.hpp"

namespace hilbcone {

// An empty label marks a bare coefficient term.
struct Term {
    Rational coef;
    std::string label;

    friend bool operator==(const Term&, const Term&) = default;
};

struct ClassExpr {
    std::vector<Term> terms;

    friend bool operator==(const ClassExpr&, const ClassExpr&) = default;
};

// expr := term (('+'|'-') term)*, term := [coef '*'] label | coef, leading '-' allowed.
ClassExpr parse_expr(std::string_view src);

// Sums coefficients per label; a nonzero bare coefficient has no home in a basis.
CycleClass to_class(const ClassExpr& e, const GradedBasis& basis);

// Canonical printer: basis order, "coef*label", unit coefficients dropped, "0" for the zero class.
std::string render(const CycleClass& c, const GradedBasis& basis);
std::string render(const ClassExpr& e);
ClassExpr to_expr(const CycleClass& c, const GradedBasis& basis);

}  // namespace hilbcone
