#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hilbcone/chowdata.hpp"

namespace hilbcone {

// A chain of bases joined by registered changes (used forwards or inverted).
struct ConversionRoute {
    std::vector<std::string> bases;
    QMatrix matrix;  // from the first basis to the last

    std::size_t steps() const { return bases.size() - 1; }
};

struct PairingRoute {
    std::string table;
    bool transposed = false;  // x lands on the table's column basis
    std::vector<std::string> x_path;
    std::vector<std::string> y_path;
};

std::string describe_route(const PairingRoute& r);

// Pairing and conversion through the registry graph of one dataset.
// Routes are shortest paths; ties go to the earlier registered change or table.
class Calculator {
public:
    explicit Calculator(const Dataset& ds);

    const Dataset& dataset() const { return *ds_; }

    const ConversionRoute& conversion(const std::string& from, const std::string& to) const;
    PairingRoute pairing_route(const std::string& basis_x, const std::string& basis_y) const;

    // G(i, j) = pairing of element i of basis_x with element j of basis_y.
    QMatrix form_between(const std::string& basis_x, const std::string& basis_y) const;

    Rational pair(const CycleClass& x, const CycleClass& y) const;
    CycleClass convert(const CycleClass& x, const std::string& to) const;
    CycleClass class_from_pairings(const QVector& values, const std::string& against, const std::string& solve_in) const;

    CycleClass element(const std::string& basis, const std::string& label) const;
    CycleClass parse_class(const std::string& basis, const std::string& expr) const;

private:
    const Dataset* ds_;
    std::map<std::pair<std::string, std::string>, ConversionRoute> routes_;
};

}  // namespace hilbcone
