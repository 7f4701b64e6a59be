#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hilbcone/exact.hpp"

namespace hilbcone {

struct Space {
    std::string id;
    int total_dim = 0;
    std::string provenance;
};

struct GradedBasis {
    std::string id;
    std::string space;
    int k = 0;
    std::vector<std::string> labels;
    std::vector<std::string> notation;  // printed symbol per label
    std::string provenance;

    std::size_t size() const { return labels.size(); }
    std::optional<std::size_t> index_of(std::string_view label) const;
};

// Coordinates of a class in one registered basis.
struct CycleClass {
    std::string basis;
    QVector coords;

    friend bool operator==(const CycleClass&, const CycleClass&) = default;
};

struct NamedClass {
    std::string name;
    CycleClass value;
    std::string provenance;
    bool scale_known = true;  // false: only the ray of the class is meaningful
};

// matrix(i, j) = pairing of rows-basis element i with cols-basis element j.
struct PairingTable {
    std::string id;
    std::string rows;
    std::string cols;
    QMatrix matrix;
    std::string provenance;
};

// Column i holds the coordinates of from-element i in the to-basis.
struct BasisChange {
    std::string id;
    std::string from;
    std::string to;
    QMatrix matrix;
    std::string provenance;
    std::optional<std::string> inverse_of;
};

struct NamedCone {
    std::string id;
    std::optional<std::string> basis;  // empty for abstract cones in Q^n
    std::size_t dim = 0;
    std::vector<QVector> rays;
    std::string provenance;
};

struct ScalarConstant {
    Rational value;
};

// values[j] = pairing of the named class with element j of `against`.
struct PairingRow {
    std::string against;
    QVector values;
};

struct ExprList {
    std::string basis;
    std::vector<std::string> exprs;
};

// 0/1 table whose nonzero entries mark positive pairings.
struct SignPattern {
    std::vector<std::string> row_names;
    std::vector<std::string> col_names;
    QMatrix matrix;
    std::vector<std::size_t> basis_rows;
};

struct WorksheetConstant {
    std::string id;
    std::variant<ScalarConstant, PairingRow, ExprList, SignPattern> body;
    std::string provenance;
};

class Dataset {
public:
    std::string version;
    std::string provenance;
    std::vector<Space> spaces;
    std::vector<GradedBasis> bases;
    std::vector<NamedClass> classes;
    std::vector<PairingTable> pairings;
    std::vector<BasisChange> basis_changes;
    std::vector<NamedCone> cones;
    std::vector<WorksheetConstant> constants;

    const Space& space(std::string_view id) const;
    const GradedBasis& basis(std::string_view id) const;
    const GradedBasis* find_basis(std::string_view id) const;
    const PairingTable& pairing(std::string_view id) const;
    const BasisChange& basis_change(std::string_view id) const;
    const NamedCone& cone(std::string_view id) const;
    const NamedCone* find_cone(std::string_view id) const;
    const WorksheetConstant& constant(std::string_view id) const;
    const NamedClass* find_class(std::string_view name) const;

    // Typed access to a worksheet constant; DataInvariantError on a kind mismatch.
    template <class T>
    const T& constant_as(std::string_view id) const {
        const auto& c = constant(id);
        if (const T* p = std::get_if<T>(&c.body)) return *p;
        throw DataInvariantError("worksheet constant '" + c.id + "' has a different kind");
    }
};

Dataset load_dataset(const std::filesystem::path& path);
Dataset parse_dataset(std::string_view json_text);

// Deterministic serialization: same data, same bytes.
std::string canonical_json(const Dataset& ds);

std::filesystem::path default_dataset_path();

// Named classes first, then "basis:label", then a bare label in the first basis that has it.
CycleClass lookup_class(const Dataset& ds, std::string_view name);
std::vector<std::string> near_matches(const Dataset& ds, std::string_view name, std::size_t limit = 5);

// Label grammar: a monomial `atom ('*' atom)*` with `atom := identifier ['^' integer]`,
// or an opaque bracketed label such as "[P^2*H^2+P*H^3]".
bool is_valid_label(std::string_view label);
// Length of the longest label prefix of `text` starting at `pos`, skipping inner whitespace; 0 if none.
std::size_t scan_label(std::string_view text, std::size_t pos);
std::string normalize_label(std::string_view label);

}  // namespace hilbcone
