#include <random>

#include "doctest.h"
#include "hilbcone/chowcalc.hpp"
#include "hilbcone/cones.hpp"
#include "hilbcone/expr.hpp"
#include "oracles.hpp"

using namespace hilbcone;

namespace {

QVector e(std::size_t n, std::size_t i) { return QVector::unit(n, i); }

std::vector<std::vector<mpz_class>> as_oracle(const std::vector<Ray>& rays) { return oracle::primitive_set(directions(rays)); }

struct RandomCone {
    std::size_t dim;
    std::vector<QVector> gens;
};

RandomCone random_cone(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> pick_dim(1, 4), pick_count(1, 6);
    RandomCone c{pick_dim(rng), {}};
    std::size_t n = pick_count(rng);
    for (std::size_t i = 0; i < n; ++i) c.gens.push_back(oracle::random_vector(rng, c.dim, -3, 3));
    return c;
}

const Dataset& bundled() {
    static const Dataset ds = load_dataset(default_dataset_path());
    return ds;
}

}  // namespace

TEST_CASE("canonical rays") {
    CHECK(canonical_ray(QVector{2, 4, -6}).direction() == QVector{1, 2, -3});
    CHECK(canonical_ray(QVector{Rational(-1, 2), 0, 0}).direction() == QVector{-1, 0, 0});
    CHECK(canonical_ray(QVector{0, 1, 0, 0, 0, 0, 0, 0, 0, Rational(1, 3)}).direction() == QVector{0, 3, 0, 0, 0, 0, 0, 0, 0, 1});
    CHECK_THROWS_AS(canonical_ray(QVector{0, 0}), ZeroRayError);
}

TEST_CASE("duals of small cones") {
    CHECK(cones_equal(dual_cone(Cone::orthant(2)), Cone::orthant(2)));

    Cone c(3, {e(3, 0), e(3, 1), e(3, 2), QVector{1, 1, -1}});
    std::vector<Ray> want = canonical_sorted({QVector{1, 0, 0}, QVector{0, 1, 0}, QVector{1, 0, 1}, QVector{0, 1, 1}});
    CHECK(extreme_rays(dual_cone(c)) == want);
    CHECK(extreme_rays(dual_cone(Cone(3, directions(want)))) == extreme_rays(c));

    CHECK(cones_equal(dual_cone_with_form(Cone::orthant(3), BilinearForm(QMatrix::identity(3))), Cone::orthant(3)));
    CHECK_THROWS_AS(dual_cone_with_form(Cone::orthant(3), BilinearForm(QMatrix::identity(2))), DimensionError);
    CHECK_THROWS_AS(BilinearForm(QMatrix{{1, 1}, {1, 1}}), SingularMatrixError);
}

TEST_CASE("extreme rays drop redundant generators") {
    CHECK(extreme_rays(Cone(2, {e(2, 0), e(2, 1), QVector{1, 1}})) == canonical_sorted({e(2, 0), e(2, 1)}));

    std::mt19937 rng(17);
    std::vector<QVector> gens;
    for (std::size_t i = 0; i < 4; ++i) gens.push_back(e(4, i));
    for (int t = 0; t < 20; ++t) gens.push_back(oracle::random_vector(rng, 4, 0, 5));
    CHECK(extreme_rays(Cone(4, gens)) == extreme_rays(Cone::orthant(4)));
}

TEST_CASE("membership") {
    Cone o = Cone::orthant(3);
    CHECK(contains(o, QVector{1, 2, 3}));
    CHECK_FALSE(contains(o, QVector{1, -1, 0}));
    CHECK_THROWS_AS(contains(o, QVector{1, 2}), DimensionError);
}

TEST_CASE("equality and lineality") {
    CHECK(cones_equal(Cone(2, {e(2, 0), e(2, 1)}), Cone(2, {e(2, 1), e(2, 0), QVector{1, 1}})));
    CHECK_FALSE(cones_equal(Cone::orthant(2), Cone(2, {e(2, 0), QVector{-1, 0}, e(2, 1)})));
    CHECK(lineality_space(Cone::orthant(3)).empty());

    Cone half(2, {e(2, 0), QVector{-1, 0}, e(2, 1)});
    auto lin = lineality_space(half);
    REQUIRE(lin.size() == 1);
    CHECK(canonical_ray(lin[0]).direction() == QVector{1, 0});
    REQUIRE(extreme_rays(half).size() == 1);
    CHECK(extreme_rays(half)[0].direction() == QVector{0, 1});
    CHECK_THROWS_AS(cones_equal(Cone::orthant(2), Cone::orthant(3)), DimensionError);
}

TEST_CASE("dual rays agree with the brute-force oracle on random cones") {
    std::mt19937 rng(2024);
    int compared = 0;
    for (int t = 0; t < 300; ++t) {
        RandomCone rc = random_cone(rng);
        Cone c(rc.dim, rc.gens);
        Cone dual = dual_cone(c);
        std::size_t rank = oracle::rank(oracle::grid_of(rc.gens));
        CHECK(lineality_space(dual).size() == rc.dim - rank);
        if (rank != rc.dim) continue;
        ++compared;
        CHECK(as_oracle(extreme_rays(dual)) == oracle::brute_dual_rays(rc.gens, rc.dim));
    }
    CHECK(compared > 50);
}

TEST_CASE("double dual, idempotence and irredundancy on random cones") {
    std::mt19937 rng(77);
    for (int t = 0; t < 200; ++t) {
        RandomCone rc = random_cone(rng);
        Cone c(rc.dim, rc.gens);
        CHECK(cones_equal(dual_cone(dual_cone(c)), c));
        Cone canon = c.canonicalized();
        CHECK(extreme_rays(canon) == extreme_rays(c));
        CHECK(extreme_rays(Cone(rc.dim, directions(extreme_rays(c)))) == extreme_rays(c));

        if (!lineality_space(c).empty()) continue;
        auto rays = extreme_rays(c);
        for (std::size_t i = 0; i < rays.size(); ++i) {
            CHECK(contains(c, rays[i].direction()));
            std::vector<QVector> rest;
            for (std::size_t j = 0; j < rays.size(); ++j)
                if (j != i) rest.push_back(rays[j].direction());
            CHECK_FALSE(contains(Cone(rc.dim, rest), rays[i].direction()));
        }
    }
}

TEST_CASE("membership agrees with Fourier-Motzkin elimination") {
    std::mt19937 rng(99);
    int inside = 0, outside = 0;
    for (int t = 0; t < 250; ++t) {
        RandomCone rc = random_cone(rng);
        Cone c(rc.dim, rc.gens);
        for (int q = 0; q < 4; ++q) {
            QVector v = oracle::random_vector(rng, rc.dim, -4, 4);
            if (q == 0) {
                // A point built inside the cone.
                v = QVector(rc.dim);
                for (const auto& g : rc.gens) v = v + g.scaled(Rational(static_cast<long>(rng() % 3)));
            }
            bool got = contains(c, v);
            CHECK(got == oracle::fm_contains(rc.gens, v));
            (got ? inside : outside)++;
        }
    }
    CHECK(inside > 100);
    CHECK(outside > 100);
}

TEST_CASE("bundled cones: effective cone in the e-basis has 26 dual rays") {
    const Dataset& ds = bundled();
    Calculator calc(ds);
    const auto& list = ds.constant_as<ExprList>("proof.eff3.e");
    std::vector<QVector> gens;
    for (const auto& x : list.exprs) gens.push_back(calc.parse_class(list.basis, x).coords);
    REQUIRE(gens.size() == 13);
    Cone dual = dual_cone(Cone(10, gens));
    CHECK(lineality_space(dual).empty());
    CHECK(extreme_rays(dual).size() == 26);
    CHECK(as_oracle(extreme_rays(dual)) == oracle::brute_dual_rays(gens, 10));
    CHECK(lineality_space(Cone(10, ds.cone("eff3.ms").rays)).empty());
}

TEST_CASE("bundled cones: listed nef rays lie in the dual of the effective cone") {
    const Dataset& ds = bundled();
    Calculator calc(ds);
    Cone eff(10, ds.cone("eff3.ms").rays);
    Cone dual = dual_cone_with_form(eff, BilinearForm(calc.form_between("p3.ms.a3", "p3.ms.a6")));
    for (const auto& r : ds.cone("nef3.ms").rays) CHECK(contains(dual, r));

    Cone eff2(6, ds.cone("eff2.ms").rays);
    CHECK(extreme_rays(eff2).size() == 7);
    CHECK(cones_equal(dual_cone(dual_cone(eff2)), eff2));
}
