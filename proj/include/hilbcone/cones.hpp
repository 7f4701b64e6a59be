#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hilbcone/exact.hpp"

namespace hilbcone {

// Nonzero direction scaled to coprime integers, orientation preserved.
class Ray {
public:
    const QVector& direction() const { return dir_; }
    std::size_t size() const { return dir_.size(); }

    friend bool operator==(const Ray&, const Ray&) = default;
    friend auto operator<=>(const Ray& a, const Ray& b) { return a.dir_ <=> b.dir_; }

private:
    friend Ray canonical_ray(const QVector& v);
    explicit Ray(QVector d) : dir_(std::move(d)) {}
    QVector dir_;
};

Ray canonical_ray(const QVector& v);

class BilinearForm {
public:
    explicit BilinearForm(QMatrix m);
    const QMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }
    Rational operator()(const QVector& x, const QVector& y) const;

private:
    QMatrix m_;
};

// Pointed part and lineality of a cone; rays sorted, lineality in RREF.
struct ConeDescription {
    std::vector<Ray> rays;
    std::vector<QVector> lineality;
};

// Double description of {y : a·y >= 0 for every row a of `constraints`}.
// Constraints are inserted in the given order after an initial basis picked greedily.
ConeDescription enumerate_rays(const std::vector<QVector>& constraints, std::size_t dim);

class Cone {
public:
    // Zero generators are dropped.
    Cone(std::size_t ambient_dim, const std::vector<QVector>& generators);
    static Cone from_columns(const QMatrix& m);
    static Cone orthant(std::size_t dim);

    std::size_t ambient_dim() const { return dim_; }
    const std::vector<Ray>& generators() const { return gens_; }
    const std::optional<ConeDescription>& cached() const { return cache_; }

    // Copy with extreme rays and lineality computed.
    Cone canonicalized() const;

private:
    Cone(std::size_t dim, std::vector<Ray> gens, ConeDescription desc);
    friend Cone dual_cone(const Cone& c);
    friend Cone cone_from_description(std::size_t dim, ConeDescription d);

    std::size_t dim_;
    std::vector<Ray> gens_;
    std::optional<ConeDescription> cache_;
};

Cone cone_from_description(std::size_t dim, ConeDescription d);

Cone dual_cone(const Cone& c);
Cone dual_cone_with_form(const Cone& c, const BilinearForm& form);
ConeDescription describe(const Cone& c);
std::vector<Ray> extreme_rays(const Cone& c);
std::vector<QVector> lineality_space(const Cone& c);
bool contains(const Cone& c, const QVector& v);
bool cones_equal(const Cone& a, const Cone& b);

std::vector<QVector> directions(const std::vector<Ray>& rays);
std::vector<Ray> canonical_sorted(const std::vector<QVector>& vs);

}  // namespace hilbcone
