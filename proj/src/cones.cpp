#include "hilbcone/cones.hpp"

#include <algorithm>

namespace hilbcone {

Ray canonical_ray(const QVector& v) {
    if (v.is_zero()) throw ZeroRayError();
    return Ray(to_qvector(primitive_integer(v)));
}

BilinearForm::BilinearForm(QMatrix m) : m_(std::move(m)) {
    if (!m_.is_square())
        throw DimensionError("bilinear form must be square, got " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    std::size_t r = mat_rank(m_);
    if (r != m_.rows()) throw SingularMatrixError(r, m_.rows());
}

Rational BilinearForm::operator()(const QVector& x, const QVector& y) const {
    return x.dot(mat_vec(m_, y));
}

namespace {

mpz_class zdot(const ZVector& a, const ZVector& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void make_primitive(ZVector& v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

struct WorkRay {
    ZVector z;
    std::vector<bool> tight;  // tight[i]: constraint i already inserted and satisfied with equality
};

}  // namespace

ConeDescription enumerate_rays(const std::vector<QVector>& constraints, std::size_t dim) {
    std::vector<QVector> rows;
    for (const auto& c : constraints) {
        if (c.size() != dim)
            throw DimensionError("constraint of length " + std::to_string(c.size()) + " in dimension " + std::to_string(dim));
        if (!c.is_zero()) rows.push_back(to_qvector(primitive_integer(c)));
    }

    ConeDescription out;
    if (rows.empty()) {
        for (std::size_t i = 0; i < dim; ++i) out.lineality.push_back(QVector::unit(dim, i));
        return out;
    }
    QMatrix a = QMatrix::from_rows(rows);
    out.lineality = nullspace(a);

    // Coordinates on the row space: y = sum_j z_j * basis_j.
    std::vector<ZVector> basis;
    for (const auto& r : rref(a).row_list()) basis.push_back(primitive_integer(r));
    const std::size_t k = basis.size();
    const std::size_t m = rows.size();

    std::vector<ZVector> reduced(m, ZVector(k));
    for (std::size_t i = 0; i < m; ++i) {
        ZVector ai = primitive_integer(rows[i]);
        for (std::size_t j = 0; j < k; ++j) reduced[i][j] = zdot(ai, basis[j]);
    }

    std::vector<std::size_t> initial;
    std::vector<ZVector> chosen;
    for (std::size_t i = 0; i < m && initial.size() < k; ++i) {
        chosen.push_back(reduced[i]);
        if (integer_rank(chosen) == chosen.size()) {
            initial.push_back(i);
        } else {
            chosen.pop_back();
        }
    }

    std::vector<QVector> chosen_q;
    for (const auto& z : chosen) chosen_q.push_back(to_qvector(z));
    QMatrix inv = mat_inverse(QMatrix::from_rows(chosen_q));

    std::vector<WorkRay> rays;
    for (std::size_t j = 0; j < k; ++j) {
        WorkRay w{primitive_integer(inv.col(j)), std::vector<bool>(m, false)};
        for (std::size_t t = 0; t < k; ++t)
            if (t != j) w.tight[initial[t]] = true;
        rays.push_back(std::move(w));
    }

    std::vector<bool> inserted(m, false);
    for (auto i : initial) inserted[i] = true;

    for (std::size_t i = 0; i < m; ++i) {
        if (inserted[i]) continue;
        std::vector<mpz_class> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<WorkRay> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = zdot(reduced[i], rays[r].z);
            int s = sgn(val[r]);
            if (s > 0) pos.push_back(r);
            if (s < 0) neg.push_back(r);
        }
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (sgn(val[r]) < 0) continue;
            WorkRay w = rays[r];
            if (sgn(val[r]) == 0) w.tight[i] = true;
            next.push_back(std::move(w));
        }
        if (k >= 2) {
            for (auto p : pos) {
                for (auto n : neg) {
                    std::vector<bool> common(m, false);
                    std::vector<ZVector> active;
                    for (std::size_t t = 0; t < m; ++t) {
                        if (rays[p].tight[t] && rays[n].tight[t]) {
                            common[t] = true;
                            active.push_back(reduced[t]);
                        }
                    }
                    if (active.size() < k - 2) continue;
                    if (integer_rank(active) != k - 2) continue;
                    ZVector z(k);
                    for (std::size_t j = 0; j < k; ++j) z[j] = val[p] * rays[n].z[j] - val[n] * rays[p].z[j];
                    make_primitive(z);
                    common[i] = true;
                    next.push_back(WorkRay{std::move(z), std::move(common)});
                }
            }
        }
        rays = std::move(next);
        inserted[i] = true;
    }

    std::vector<QVector> ys;
    for (const auto& w : rays) {
        ZVector y(dim, 0);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t c = 0; c < dim; ++c) y[c] += w.z[j] * basis[j][c];
        ys.push_back(to_qvector(y));
    }
    out.rays = canonical_sorted(ys);
    return out;
}

std::vector<QVector> directions(const std::vector<Ray>& rays) {
    std::vector<QVector> out;
    out.reserve(rays.size());
    for (const auto& r : rays) out.push_back(r.direction());
    return out;
}

std::vector<Ray> canonical_sorted(const std::vector<QVector>& vs) {
    std::vector<Ray> out;
    for (const auto& v : vs)
        if (!v.is_zero()) out.push_back(canonical_ray(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Cone::Cone(std::size_t ambient_dim, const std::vector<QVector>& generators) : dim_(ambient_dim) {
    for (const auto& g : generators) {
        if (g.size() != dim_)
            throw DimensionError("generator of length " + std::to_string(g.size()) + " in dimension " + std::to_string(dim_));
        if (!g.is_zero()) gens_.push_back(canonical_ray(g));
    }
}

Cone::Cone(std::size_t dim, std::vector<Ray> gens, ConeDescription desc)
    : dim_(dim), gens_(std::move(gens)), cache_(std::move(desc)) {}

Cone Cone::from_columns(const QMatrix& m) { return Cone(m.rows(), m.col_list()); }

Cone Cone::orthant(std::size_t dim) {
    std::vector<QVector> g;
    for (std::size_t i = 0; i < dim; ++i) g.push_back(QVector::unit(dim, i));
    return Cone(dim, g);
}

Cone Cone::canonicalized() const {
    if (cache_) return *this;
    return Cone(dim_, gens_, describe(*this));
}

Cone cone_from_description(std::size_t dim, ConeDescription d) {
    std::vector<Ray> gens = d.rays;
    for (const auto& l : d.lineality) {
        gens.push_back(canonical_ray(l));
        gens.push_back(canonical_ray(l.scaled(-1)));
    }
    return Cone(dim, std::move(gens), std::move(d));
}

namespace {

std::vector<QVector> with_lineality(const ConeDescription& d) {
    std::vector<QVector> out = directions(d.rays);
    for (const auto& l : d.lineality) {
        out.push_back(l);
        out.push_back(l.scaled(-1));
    }
    return out;
}

bool satisfies(const ConeDescription& dual, const QVector& v) {
    for (const auto& r : dual.rays)
        if (r.direction().dot(v).sign() < 0) return false;
    for (const auto& l : dual.lineality)
        if (!l.dot(v).is_zero()) return false;
    return true;
}

}  // namespace

Cone dual_cone(const Cone& c) {
    return cone_from_description(c.ambient_dim(), enumerate_rays(directions(c.generators()), c.ambient_dim()));
}

Cone dual_cone_with_form(const Cone& c, const BilinearForm& form) {
    if (form.dim() != c.ambient_dim())
        throw DimensionError("form of size " + std::to_string(form.dim()) + " for cone in dimension " + std::to_string(c.ambient_dim()));
    QMatrix t = mat_transpose(form.matrix());
    std::vector<QVector> moved;
    for (const auto& g : c.generators()) moved.push_back(mat_vec(t, g.direction()));
    return dual_cone(Cone(c.ambient_dim(), moved));
}

ConeDescription describe(const Cone& c) {
    if (c.cached()) return *c.cached();
    ConeDescription dual = enumerate_rays(directions(c.generators()), c.ambient_dim());
    return enumerate_rays(with_lineality(dual), c.ambient_dim());
}

std::vector<Ray> extreme_rays(const Cone& c) { return describe(c).rays; }

std::vector<QVector> lineality_space(const Cone& c) { return describe(c).lineality; }

bool contains(const Cone& c, const QVector& v) {
    if (v.size() != c.ambient_dim())
        throw DimensionError("vector of length " + std::to_string(v.size()) + " against cone in dimension " + std::to_string(c.ambient_dim()));
    return satisfies(enumerate_rays(directions(c.generators()), c.ambient_dim()), v);
}

bool cones_equal(const Cone& a, const Cone& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionError("comparing cones in dimensions " + std::to_string(a.ambient_dim()) + " and " + std::to_string(b.ambient_dim()));
    ConeDescription da = describe(a);
    ConeDescription db = describe(b);
    if (da.lineality != db.lineality) return false;
    ConeDescription dual_a = enumerate_rays(with_lineality(da), a.ambient_dim());
    ConeDescription dual_b = enumerate_rays(with_lineality(db), b.ambient_dim());
    for (const auto& r : da.rays)
        if (!satisfies(dual_b, r.direction())) return false;
    for (const auto& r : db.rays)
        if (!satisfies(dual_a, r.direction())) return false;
    return true;
}

}  // namespace hilbcone
