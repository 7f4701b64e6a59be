#include "hilbcone/chowcalc.hpp"

#include <deque>
#include <optional>

#include "hilbcone/expr.hpp"

namespace hilbcone {

namespace {

struct Edge {
    std::string from;
    std::string to;
    QMatrix matrix;
};

std::string joined(const std::vector<std::string>& path) {
    std::string s;
    for (const auto& b : path) s += (s.empty() ? "" : " -> ") + b;
    return s;
}

}  // namespace

std::string describe_route(const PairingRoute& r) {
    return "table " + r.table + (r.transposed ? " (transposed)" : "") + "; x: " + joined(r.x_path) + "; y: " + joined(r.y_path);
}

Calculator::Calculator(const Dataset& ds) : ds_(&ds) {
    std::vector<Edge> edges;
    for (const auto& ch : ds.basis_changes) {
        edges.push_back({ch.from, ch.to, ch.matrix});
        edges.push_back({ch.to, ch.from, mat_inverse(ch.matrix)});
    }
    for (const auto& src : ds.bases) {
        // Breadth-first search; the first route found to a basis is kept.
        routes_[{src.id, src.id}] = {{src.id}, QMatrix::identity(src.size())};
        std::deque<std::string> queue{src.id};
        while (!queue.empty()) {
            std::string at = queue.front();
            queue.pop_front();
            const ConversionRoute here = routes_.at({src.id, at});
            for (const auto& e : edges) {
                if (e.from != at || routes_.count({src.id, e.to})) continue;
                ConversionRoute next{here.bases, mat_mul(e.matrix, here.matrix)};
                next.bases.push_back(e.to);
                routes_[{src.id, e.to}] = std::move(next);
                queue.push_back(e.to);
            }
        }
    }
}

const ConversionRoute& Calculator::conversion(const std::string& from, const std::string& to) const {
    ds_->basis(from);
    ds_->basis(to);
    auto it = routes_.find({from, to});
    if (it == routes_.end()) throw NoConversionPathError("no registered conversion from " + from + " to " + to);
    return it->second;
}

PairingRoute Calculator::pairing_route(const std::string& basis_x, const std::string& basis_y) const {
    const GradedBasis& bx = ds_->basis(basis_x);
    const GradedBasis& by = ds_->basis(basis_y);
    if (bx.space != by.space || bx.k + by.k != ds_->space(bx.space).total_dim)
        throw NoPairingPathError(basis_x + " (dimension " + std::to_string(bx.k) + ") and " + basis_y + " (dimension " +
                                 std::to_string(by.k) + ") are not complementary");
    std::optional<PairingRoute> best;
    std::size_t best_cost = 0;
    auto consider = [&](const PairingTable& t, bool transposed) {
        const std::string& xs = transposed ? t.cols : t.rows;
        const std::string& ys = transposed ? t.rows : t.cols;
        auto rx = routes_.find({basis_x, xs});
        auto ry = routes_.find({basis_y, ys});
        if (rx == routes_.end() || ry == routes_.end()) return;
        std::size_t cost = rx->second.steps() + ry->second.steps();
        if (best && cost >= best_cost) return;
        best = PairingRoute{t.id, transposed, rx->second.bases, ry->second.bases};
        best_cost = cost;
    };
    for (const auto& t : ds_->pairings) {
        consider(t, false);
        consider(t, true);
    }
    if (!best) throw NoPairingPathError("no registered pairing table reaches " + basis_x + " x " + basis_y);
    return *best;
}

QMatrix Calculator::form_between(const std::string& basis_x, const std::string& basis_y) const {
    PairingRoute r = pairing_route(basis_x, basis_y);
    const PairingTable& t = ds_->pairing(r.table);
    const QMatrix& cx = conversion(basis_x, r.x_path.back()).matrix;
    const QMatrix& cy = conversion(basis_y, r.y_path.back()).matrix;
    QMatrix table = r.transposed ? mat_transpose(t.matrix) : t.matrix;
    return mat_mul(mat_mul(mat_transpose(cx), table), cy);
}

Rational Calculator::pair(const CycleClass& x, const CycleClass& y) const {
    QMatrix g = form_between(x.basis, y.basis);
    if (x.coords.size() != g.rows() || y.coords.size() != g.cols())
        throw DimensionError("class coordinates do not match their bases");
    return x.coords.dot(mat_vec(g, y.coords));
}

CycleClass Calculator::convert(const CycleClass& x, const std::string& to) const {
    const ConversionRoute& r = conversion(x.basis, to);
    if (x.coords.size() != r.matrix.cols()) throw DimensionError("class coordinates do not match basis " + x.basis);
    return {to, mat_vec(r.matrix, x.coords)};
}

CycleClass Calculator::class_from_pairings(const QVector& values, const std::string& against, const std::string& solve_in) const {
    const GradedBasis& b = ds_->basis(against);
    if (values.size() != b.size())
        throw DimensionError(std::to_string(values.size()) + " pairing values against basis " + against + " of size " +
                             std::to_string(b.size()));
    QMatrix g = form_between(solve_in, against);
    return {solve_in, mat_solve(mat_transpose(g), values)};
}

CycleClass Calculator::element(const std::string& basis, const std::string& label) const {
    const GradedBasis& b = ds_->basis(basis);
    auto i = b.index_of(label);
    if (!i) throw UnknownLabelError("label '" + label + "' is not in basis " + basis);
    return {basis, QVector::unit(b.size(), *i)};
}

CycleClass Calculator::parse_class(const std::string& basis, const std::string& expr) const {
    return to_class(parse_expr(expr), ds_->basis(basis));
}

}  // namespace hilbcone
