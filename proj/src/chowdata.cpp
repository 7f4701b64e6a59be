#include "hilbcone/chowdata.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hilbcone {

using nlohmann::json;

std::optional<std::size_t> GradedBasis::index_of(std::string_view label) const {
    std::string key = normalize_label(label);
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == key) return i;
    return std::nullopt;
}

namespace {

template <class T>
const T* find_id(const std::vector<T>& items, std::string_view id) {
    for (const auto& x : items)
        if (x.id == id) return &x;
    return nullptr;
}

template <class T>
const T& require_id(const std::vector<T>& items, std::string_view id, const char* what) {
    if (const T* p = find_id(items, id)) return *p;
    throw UnknownEntryError(std::string("unknown ") + what + " '" + std::string(id) + "'");
}

// A JSON value together with its pointer, so every schema complaint can say where it happened.
struct Node {
    const json& j;
    std::string ptr;

    [[noreturn]] void fail(const std::string& what) const { throw SchemaError(ptr.empty() ? "/" : ptr, what); }

    Node at(const std::string& key) const {
        if (!j.is_object()) fail("expected an object");
        auto it = j.find(key);
        if (it == j.end()) throw SchemaError(ptr + "/" + key, "missing required key");
        return {*it, ptr + "/" + key};
    }
    std::optional<Node> maybe(const std::string& key) const {
        if (!j.is_object()) fail("expected an object");
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return std::nullopt;
        return Node{*it, ptr + "/" + key};
    }
    Node at(std::size_t i) const { return {j.at(i), ptr + "/" + std::to_string(i)}; }

    std::size_t array_size() const {
        if (!j.is_array()) fail("expected an array");
        return j.size();
    }
    std::string str() const {
        if (!j.is_string()) fail("expected a string");
        return j.get<std::string>();
    }
    long integer() const {
        if (!j.is_number_integer()) fail("expected an integer");
        return j.get<long>();
    }
    bool boolean() const {
        if (!j.is_boolean()) fail("expected a boolean");
        return j.get<bool>();
    }
    Rational rational() const {
        if (!j.is_string()) fail("expected a rational written as a string");
        auto q = Rational::parse(j.get<std::string>());
        if (!q) fail("malformed rational '" + j.get<std::string>() + "'");
        return *q;
    }
    std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (std::size_t i = 0, n = array_size(); i < n; ++i) out.push_back(at(i).str());
        return out;
    }
    QVector vector(std::optional<std::size_t> want) const {
        std::size_t n = array_size();
        if (want && n != *want) fail("expected " + std::to_string(*want) + " entries, found " + std::to_string(n));
        std::vector<Rational> e;
        for (std::size_t i = 0; i < n; ++i) e.push_back(at(i).rational());
        return QVector(std::move(e));
    }
    QMatrix matrix(std::size_t rows, std::size_t cols) const {
        std::size_t n = array_size();
        if (n != rows) fail("expected " + std::to_string(rows) + " rows, found " + std::to_string(n));
        std::vector<QVector> r;
        for (std::size_t i = 0; i < n; ++i) r.push_back(at(i).vector(cols));
        return QMatrix::from_rows(r, cols);
    }
};

std::string provenance_of(const Node& n, const std::string& owner) {
    std::string p = n.at("provenance").str();
    if (p.find_first_not_of(" \t\r\n") == std::string::npos)
        throw DataInvariantError(owner + ": empty provenance");
    return p;
}

template <class T>
void require_unique(const std::vector<T>& items, const char* what) {
    std::set<std::string> seen;
    for (const auto& x : items)
        if (!seen.insert(x.id).second) throw DataInvariantError(std::string("duplicate ") + what + " id '" + x.id + "'");
}

const GradedBasis& basis_ref(const Dataset& ds, const Node& n, const std::string& owner) {
    std::string id = n.str();
    const GradedBasis* b = ds.find_basis(id);
    if (!b) throw DataInvariantError(owner + ": unknown basis '" + id + "'");
    return *b;
}

void read_spaces(Dataset& ds, const Node& root) {
    Node arr = root.at("spaces");
    for (std::size_t i = 0, n = arr.array_size(); i < n; ++i) {
        Node s = arr.at(i);
        Space sp{s.at("id").str(), static_cast<int>(s.at("total_dim").integer()), {}};
        int want = sp.id == "hilb3p2" ? 6 : sp.id == "hilb3p3" ? 9 : -1;
        if (want < 0) s.at("id").fail("unknown space '" + sp.id + "'");
        if (sp.total_dim != want)
            throw DataInvariantError("space " + sp.id + ": total_dim " + std::to_string(sp.total_dim) + " should be " + std::to_string(want));
        sp.provenance = provenance_of(s, "space " + sp.id);
        ds.spaces.push_back(std::move(sp));
    }
    require_unique(ds.spaces, "space");
}

void read_bases(Dataset& ds, const Node& root) {
    Node arr = root.at("bases");
    for (std::size_t i = 0, n = arr.array_size(); i < n; ++i) {
        Node b = arr.at(i);
        GradedBasis gb;
        gb.id = b.at("id").str();
        gb.space = b.at("space").str();
        gb.k = static_cast<int>(b.at("k").integer());
        gb.labels = b.at("labels").strings();
        const std::string owner = "basis " + gb.id;
        if (auto note = b.maybe("notation")) {
            gb.notation = note->strings();
            if (gb.notation.size() != gb.labels.size())
                note->fail("expected " + std::to_string(gb.labels.size()) + " entries, found " + std::to_string(gb.notation.size()));
        } else {
            gb.notation = gb.labels;
        }
        gb.provenance = provenance_of(b, owner);
        const Space* sp = find_id(ds.spaces, gb.space);
        if (!sp) throw DataInvariantError(owner + ": unknown space '" + gb.space + "'");
        if (gb.k < 0 || gb.k > sp->total_dim) throw DataInvariantError(owner + ": dimension " + std::to_string(gb.k) + " out of range");
        if (gb.labels.empty()) throw DataInvariantError(owner + ": no labels");
        std::set<std::string> seen;
        for (const auto& l : gb.labels) {
            if (!is_valid_label(l)) throw DataInvariantError(owner + ": malformed label '" + l + "'");
            if (!seen.insert(l).second) throw DataInvariantError(owner + ": duplicate label '" + l + "'");
        }
        ds.bases.push_back(std::move(gb));
    }
    require_unique(ds.bases, "basis");
}

void read_classes(Dataset& ds, const Node& root) {
    Node arr = root.at("classes");
    std::set<std::string> seen;
    for (std::size_t i = 0, n = arr.array_size(); i < n; ++i) {
        Node c = arr.at(i);
        NamedClass nc;
        nc.name = c.at("name").str();
        const std::string owner = "class " + nc.name;
        const GradedBasis& b = basis_ref(ds, c.at("basis"), owner);
        nc.value.basis = b.id;
        Node coords = c.at("coords");
        if (!coords.j.is_object()) coords.fail("expected an object mapping labels to rationals");
        std::vector<Rational> v(b.size());
        for (const auto& [label, _] : coords.j.items()) {
            auto idx = b.index_of(label);
            if (!idx) throw DataInvariantError(owner + ": label '" + label + "' is not in basis " + b.id);
            v[*idx] = coords.at(label).rational();
        }
        nc.value.coords = QVector(std::move(v));
        if (auto sk = c.maybe("scale_known")) nc.scale_known = sk->boolean();
        nc.provenance = provenance_of(c, owner);
        if (!seen.insert(nc.name).second) throw DataInvariantError("duplicate class name '" + nc.name + "'");
        ds.classes.push_back(std::move(nc));
    }
}

void read_pairings(Dataset& ds, const Node& root) {
    Node arr = root.at("pairings");
    for (std::size_t i = 0, n = arr.array_size(); i < n; ++i) {
        Node p = arr.at(i);
        PairingTable t;
        t.id = p.at("id").str();
        const std::string owner = "pairing " + t.id;
        const GradedBasis& r = basis_ref(ds, p.at("rows"), owner);
        const GradedBasis& c = basis_ref(ds, p.at("cols"), owner);
        t.rows = r.id;
        t.cols = c.id;
        t.matrix = p.at("matrix").matrix(r.size(), c.size());
        t.provenance = provenance_of(p, owner);
        if (r.space != c.space) throw DataInvariantError(owner + ": bases live on different spaces");
        if (r.k + c.k != ds.space(r.space).total_dim)
            throw DataInvariantError(owner + ": dimensions " + std::to_string(r.k) + " and " + std::to_string(c.k) + " are not complementary");
        if (!t.matrix.is_square()) throw DataInvariantError(owner + ": matrix is not square");
        std::size_t rank = mat_rank(t.matrix);
        if (rank != t.matrix.rows())
            throw DataInvariantError(owner + ": matrix is singular (rank " + std::to_string(rank) + " of " + std::to_string(t.matrix.rows()) + ")");
        ds.pairings.push_back(std::move(t));
    }
    require_unique(ds.pairings, "pairing");
}

void read_changes(Dataset& ds, const Node& root) {
    Node arr = root.at("basis_changes");
    for (std::size_t i = 0, n = arr.array_size(); i < n; ++i) {
        Node p = arr.at(i);
        BasisChange ch;
        ch.id = p.at("id").str();
        const std::string owner = "basis change " + ch.id;
        const GradedBasis& from = basis_ref(ds, p.at("from"), owner);
        const GradedBasis& to = basis_ref(ds, p.at("to"), owner);
        ch.from = from.id;
        ch.to = to.id;
        ch.matrix = p.at("matrix").matrix(to.size(), from.size());
        ch.provenance = provenance_of(p, owner);
        if (auto inv = p.maybe("inverse_of")) ch.inverse_of = inv->str();
        if (from.space != to.space || from.k != to.k)
            throw DataInvariantError(owner + ": source and target are not the same Chow group");
        if (!ch.matrix.is_square()) throw DataInvariantError(owner + ": matrix is not square");
        std::size_t rank = mat_rank(ch.matrix);
        if (rank != ch.matrix.rows()) throw DataInvariantError(owner + ": matrix is not invertible (rank " + std::to_string(rank) + ")");
        ds.basis_changes.push_back(std::move(ch));
    }
    require_unique(ds.basis_changes, "basis change");
    for (const auto& ch : ds.basis_changes) {
        if (!ch.inverse_of) continue;
        const BasisChange* other = find_id(ds.basis_changes, *ch.inverse_of);
        const std::string owner = "basis change " + ch.id;
        if (!other) throw DataInvariantError(owner + ": inverse_of names unknown change '" + *ch.inverse_of + "'");
        if (other->from != ch.to || other->to != ch.from)
            throw DataInvariantError(owner + ": inverse_of " + other->id + " runs between different bases");
        QMatrix prod = mat_mul(ch.matrix, other->matrix);
        if (prod != QMatrix::identity(prod.rows()))
            throw DataInvariantError(owner + ": product with " + other->id + " is not the identity\n" +
                                     describe_diff(prod, QMatrix::identity(prod.rows())));
    }
}

void read_cones(Dataset& ds, const Node& root) {
    Node arr = root.at("cones");
    for (std::size_t i = 0, n = arr.array_size(); i < n; ++i) {
        Node c = arr.at(i);
        NamedCone nc;
        nc.id = c.at("id").str();
        const std::string owner = "cone " + nc.id;
        Node rays = c.at("rays");
        std::optional<std::size_t> width;
        if (auto b = c.maybe("basis")) {
            const GradedBasis& gb = basis_ref(ds, *b, owner);
            nc.basis = gb.id;
            width = gb.size();
        } else {
            if (rays.array_size() == 0) rays.fail("an abstract cone needs at least one ray to fix its dimension");
            width = rays.at(0).array_size();
        }
        nc.dim = *width;
        for (std::size_t r = 0, m = rays.array_size(); r < m; ++r) nc.rays.push_back(rays.at(r).vector(width));
        nc.provenance = provenance_of(c, owner);
        ds.cones.push_back(std::move(nc));
    }
    require_unique(ds.cones, "cone");
}

void read_constants(Dataset& ds, const Node& root) {
    Node arr = root.at("worksheet_constants");
    for (std::size_t i = 0, n = arr.array_size(); i < n; ++i) {
        Node c = arr.at(i);
        WorksheetConstant wc;
        wc.id = c.at("id").str();
        const std::string owner = "worksheet constant " + wc.id;
        Node kind = c.at("kind");
        std::string k = kind.str();
        if (k == "scalar") {
            wc.body = ScalarConstant{c.at("value").rational()};
        } else if (k == "pairing_row") {
            const GradedBasis& b = basis_ref(ds, c.at("against"), owner);
            wc.body = PairingRow{b.id, c.at("values").vector(b.size())};
        } else if (k == "expr_list") {
            const GradedBasis& b = basis_ref(ds, c.at("basis"), owner);
            wc.body = ExprList{b.id, c.at("exprs").strings()};
        } else if (k == "sign_pattern") {
            SignPattern sp;
            sp.row_names = c.at("row_names").strings();
            sp.col_names = c.at("col_names").strings();
            sp.matrix = c.at("matrix").matrix(sp.row_names.size(), sp.col_names.size());
            Node br = c.at("basis_rows");
            for (std::size_t r = 0, m = br.array_size(); r < m; ++r) {
                long v = br.at(r).integer();
                if (v < 0 || static_cast<std::size_t>(v) >= sp.row_names.size()) br.at(r).fail("row index out of range");
                sp.basis_rows.push_back(static_cast<std::size_t>(v));
            }
            wc.body = std::move(sp);
        } else {
            kind.fail("unknown kind '" + k + "' (expected scalar, pairing_row, expr_list or sign_pattern)");
        }
        wc.provenance = provenance_of(c, owner);
        ds.constants.push_back(std::move(wc));
    }
    require_unique(ds.constants, "worksheet constant");
}

json rational_row(const QVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

json matrix_json(const QMatrix& m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(rational_row(m.row(r)));
    return a;
}

}  // namespace

const Space& Dataset::space(std::string_view id) const { return require_id(spaces, id, "space"); }

const GradedBasis* Dataset::find_basis(std::string_view id) const { return find_id(bases, id); }

const GradedBasis& Dataset::basis(std::string_view id) const {
    if (const auto* b = find_basis(id)) return *b;
    throw UnknownBasisError("unknown basis '" + std::string(id) + "'");
}

const PairingTable& Dataset::pairing(std::string_view id) const { return require_id(pairings, id, "pairing"); }
const BasisChange& Dataset::basis_change(std::string_view id) const { return require_id(basis_changes, id, "basis change"); }
const NamedCone* Dataset::find_cone(std::string_view id) const { return find_id(cones, id); }
const NamedCone& Dataset::cone(std::string_view id) const { return require_id(cones, id, "cone"); }
const WorksheetConstant& Dataset::constant(std::string_view id) const { return require_id(constants, id, "worksheet constant"); }

const NamedClass* Dataset::find_class(std::string_view name) const {
    for (const auto& c : classes)
        if (c.name == name) return &c;
    return nullptr;
}

Dataset parse_dataset(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("/", std::string("not valid JSON: ") + e.what());
    }
    Node root{doc, ""};
    if (!doc.is_object()) root.fail("expected a JSON object at the top level");
    Dataset ds;
    if (auto v = root.maybe("version")) ds.version = v->str();
    if (auto p = root.maybe("provenance")) ds.provenance = p->str();
    read_spaces(ds, root);
    read_bases(ds, root);
    read_classes(ds, root);
    read_pairings(ds, root);
    read_changes(ds, root);
    read_cones(ds, root);
    read_constants(ds, root);
    return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("/", "cannot open dataset file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str());
}

std::filesystem::path default_dataset_path() {
    if (const char* env = std::getenv("HILBCONE_DATASET"); env && *env) return env;
    return HILBCONE_DEFAULT_DATASET;
}

std::string canonical_json(const Dataset& ds) {
    json out;
    out["version"] = ds.version;
    out["provenance"] = ds.provenance;
    out["spaces"] = json::array();
    for (const auto& s : ds.spaces) out["spaces"].push_back({{"id", s.id}, {"total_dim", s.total_dim}, {"provenance", s.provenance}});
    out["bases"] = json::array();
    for (const auto& b : ds.bases)
        out["bases"].push_back({{"id", b.id}, {"space", b.space}, {"k", b.k}, {"labels", b.labels}, {"notation", b.notation}, {"provenance", b.provenance}});
    out["classes"] = json::array();
    for (const auto& c : ds.classes) {
        const GradedBasis& b = ds.basis(c.value.basis);
        json coords = json::object();
        for (std::size_t i = 0; i < b.size(); ++i)
            if (!c.value.coords[i].is_zero()) coords[b.labels[i]] = c.value.coords[i].str();
        json e = {{"name", c.name}, {"basis", b.id}, {"coords", coords}, {"provenance", c.provenance}};
        if (!c.scale_known) e["scale_known"] = false;
        out["classes"].push_back(e);
    }
    out["pairings"] = json::array();
    for (const auto& p : ds.pairings)
        out["pairings"].push_back({{"id", p.id}, {"rows", p.rows}, {"cols", p.cols}, {"matrix", matrix_json(p.matrix)}, {"provenance", p.provenance}});
    out["basis_changes"] = json::array();
    for (const auto& c : ds.basis_changes) {
        json e = {{"id", c.id}, {"from", c.from}, {"to", c.to}, {"matrix", matrix_json(c.matrix)}, {"provenance", c.provenance}};
        if (c.inverse_of) e["inverse_of"] = *c.inverse_of;
        out["basis_changes"].push_back(e);
    }
    out["cones"] = json::array();
    for (const auto& c : ds.cones) {
        json rays = json::array();
        for (const auto& r : c.rays) rays.push_back(rational_row(r));
        out["cones"].push_back({{"id", c.id}, {"basis", c.basis ? json(*c.basis) : json(nullptr)}, {"rays", rays}, {"provenance", c.provenance}});
    }
    out["worksheet_constants"] = json::array();
    for (const auto& w : ds.constants) {
        json e = {{"id", w.id}, {"provenance", w.provenance}};
        std::visit(
            [&](const auto& body) {
                using T = std::decay_t<decltype(body)>;
                if constexpr (std::is_same_v<T, ScalarConstant>) {
                    e["kind"] = "scalar";
                    e["value"] = body.value.str();
                } else if constexpr (std::is_same_v<T, PairingRow>) {
                    e["kind"] = "pairing_row";
                    e["against"] = body.against;
                    e["values"] = rational_row(body.values);
                } else if constexpr (std::is_same_v<T, ExprList>) {
                    e["kind"] = "expr_list";
                    e["basis"] = body.basis;
                    e["exprs"] = body.exprs;
                } else {
                    e["kind"] = "sign_pattern";
                    e["row_names"] = body.row_names;
                    e["col_names"] = body.col_names;
                    e["matrix"] = matrix_json(body.matrix);
                    e["basis_rows"] = body.basis_rows;
                }
            },
            w.body);
        out["worksheet_constants"].push_back(e);
    }
    return out.dump(1) + "\n";
}

CycleClass lookup_class(const Dataset& ds, std::string_view name) {
    if (const NamedClass* c = ds.find_class(name)) return c->value;
    auto unit = [](const GradedBasis& b, std::size_t i) { return CycleClass{b.id, QVector::unit(b.size(), i)}; };
    if (auto colon = name.find(':'); colon != std::string_view::npos) {
        if (const GradedBasis* b = ds.find_basis(name.substr(0, colon)))
            if (auto i = b->index_of(name.substr(colon + 1))) return unit(*b, *i);
    } else {
        for (const auto& b : ds.bases)
            if (auto i = b.index_of(name)) return unit(b, *i);
    }
    throw UnknownClassError(std::string(name), near_matches(ds, name));
}

}  // namespace hilbcone
