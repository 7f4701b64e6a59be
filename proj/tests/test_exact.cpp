#include <random>

#include "doctest.h"
#include "hilbcone/exact.hpp"
#include "oracles.hpp"

using namespace hilbcone;

namespace {

QMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Rational> e;
        for (std::size_t j = 0; j < c; ++j) e.emplace_back(num(rng), den(rng));
        rows.emplace_back(std::move(e));
    }
    return QMatrix::from_rows(rows, c);
}

// Entry-by-entry expansion, independent of mat_mul.
QMatrix expand_product(const QMatrix& a, const QMatrix& b) {
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<Rational> e;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            mpq_class s = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k).raw() * b(k, j).raw();
            e.emplace_back(mpz_class(s.get_num()), mpz_class(s.get_den()));
        }
        rows.emplace_back(std::move(e));
    }
    return QMatrix::from_rows(rows, b.cols());
}

oracle::Grid grid(const QMatrix& m) { return oracle::grid_of(m.row_list()); }

}  // namespace

TEST_CASE("rational normalizes and parses") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -3).str() == "-1/3");
    CHECK(Rational(6, 3).str() == "2");
    CHECK(Rational::parse("-7/21").value() == Rational(-1, 3));
    CHECK_FALSE(Rational::parse("1/0").has_value());
    CHECK_FALSE(Rational::parse("1.5").has_value());
    CHECK_FALSE(Rational::parse(" 1").has_value());
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
    Rational third(1, 3);
    CHECK(third + third + third == Rational(1));
    CHECK(Rational(1, 3) * Rational(3, 7) == Rational(1, 7));
    CHECK(Rational(-2, 5).abs() == Rational(2, 5));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("matrix product") {
    CHECK(mat_mul(QMatrix::identity(3), QMatrix::identity(3)) == QMatrix::identity(3));
    CHECK_THROWS_AS(mat_mul(QMatrix(2, 3), QMatrix(2, 3)), DimensionError);

    std::mt19937 rng(11);
    for (int t = 0; t < 20; ++t) {
        QMatrix a = random_matrix(rng, 4, 4), b = random_matrix(rng, 4, 4), c = random_matrix(rng, 4, 4);
        CHECK(mat_mul(a, b) == expand_product(a, b));
        CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
    }
}

TEST_CASE("matrix inverse") {
    CHECK(mat_inverse(QMatrix::identity(6)) == QMatrix::identity(6));
    QMatrix singular{{1, 2}, {2, 4}};
    try {
        mat_inverse(singular);
        FAIL("expected a singular matrix error");
    } catch (const SingularMatrixError& e) {
        CHECK(e.rank() == 1);
    }

    std::mt19937 rng(5);
    int tried = 0;
    while (tried < 15) {
        QMatrix a = random_matrix(rng, 5, 5);
        if (oracle::det(grid(a)) == 0) continue;
        ++tried;
        CHECK(expand_product(a, mat_inverse(a)) == QMatrix::identity(5));
    }
}

TEST_CASE("solve") {
    CHECK(mat_solve(QMatrix::identity(2), QVector{3, 5}) == QVector{3, 5});
    CHECK_THROWS_AS(mat_solve(QMatrix::identity(2), QVector{1, 2, 3}), DimensionError);
    CHECK_THROWS_AS(mat_solve(QMatrix{{1, 1}, {1, 1}}, QVector{1, 2}), SingularMatrixError);

    std::mt19937 rng(3);
    for (int t = 0; t < 15; ++t) {
        QMatrix a = random_matrix(rng, 4, 4);
        if (oracle::det(grid(a)) == 0) continue;
        QVector b = oracle::random_vector(rng, 4, -9, 9);
        QVector x = mat_solve(a, b);
        CHECK(expand_product(a, QMatrix::from_columns({x})) == QMatrix::from_columns({b}));
    }
}

TEST_CASE("rank") {
    CHECK(mat_rank(QMatrix(3, 3)) == 0);
    std::mt19937 rng(9);
    QVector v = oracle::random_vector(rng, 6, 1, 9);
    std::vector<QVector> rows;
    for (int i = 1; i <= 5; ++i) rows.push_back(v.scaled(Rational(i, 7 - i)));
    CHECK(mat_rank(QMatrix::from_rows(rows)) == 1);

    for (int t = 0; t < 30; ++t) {
        QMatrix a = random_matrix(rng, 3 + t % 3, 5);
        // Force some dependence.
        std::vector<QVector> r = a.row_list();
        r.push_back(r[0] + r[1]);
        QMatrix b = QMatrix::from_rows(r);
        CHECK(mat_rank(b) == oracle::rank(grid(b)));
    }
}

TEST_CASE("transpose") {
    QMatrix a{{1, 2, 3}, {4, 5, 6}};
    QMatrix t = mat_transpose(a);
    REQUIRE(t.rows() == 3);
    REQUIRE(t.cols() == 2);
    CHECK(t(2, 0) == Rational(3));
    CHECK(t(0, 1) == Rational(4));
    CHECK(mat_transpose(QMatrix::identity(4)) == QMatrix::identity(4));
    std::mt19937 rng(1);
    QMatrix r = random_matrix(rng, 3, 5);
    CHECK(mat_transpose(mat_transpose(r)) == r);
}

TEST_CASE("nullspace and rref") {
    QMatrix a{{1, 2, 3}, {2, 4, 6}};
    auto ns = nullspace(a);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) CHECK(mat_vec(a, v).is_zero());
    CHECK(rref(a).rows() == 1);
    CHECK(rref(a).row(0) == QVector{1, 2, 3});
}

TEST_CASE("primitive integer vectors keep orientation") {
    CHECK(to_qvector(primitive_integer(QVector{Rational(-1, 2), 0, Rational(3, 4)})) == QVector{-2, 0, 3});
    CHECK(primitive_integer(QVector{0, 0}) == ZVector{0, 0});
}

TEST_CASE("matrix diffs list the differing entries") {
    QMatrix a{{1, 2}, {3, 4}};
    QMatrix b = a.with(1, 0, Rational(-3));
    auto d = diff_entries(a, b);
    REQUIRE(d.size() == 1);
    CHECK(d[0].row == 1);
    CHECK(d[0].col == 0);
    CHECK(describe_diff(a, b).find("-3") != std::string::npos);
}
