#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "hilbcone/errors.hpp"

namespace hilbcone {

// Exact rational in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : v_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& num, const mpz_class& den);
    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}
    Rational(double) = delete;
    Rational(float) = delete;

    // Accepts "p" or "p/q" with optional leading '-', no whitespace.
    static std::optional<Rational> parse(std::string_view text);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    Rational abs() const;

    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return v_; }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    mpq_class v_;
};

class QVector {
public:
    QVector() = default;
    explicit QVector(std::size_t n) : e_(n) {}
    explicit QVector(std::vector<Rational> e) : e_(std::move(e)) {}
    QVector(std::initializer_list<Rational> e) : e_(e) {}

    static QVector unit(std::size_t n, std::size_t i);

    std::size_t size() const { return e_.size(); }
    const Rational& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<Rational>& entries() const { return e_; }
    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }

    bool is_zero() const;
    Rational dot(const QVector& o) const;
    QVector scaled(const Rational& s) const;
    std::string str() const;

    friend QVector operator+(const QVector& a, const QVector& b);
    friend QVector operator-(const QVector& a, const QVector& b);
    friend bool operator==(const QVector&, const QVector&) = default;
    friend auto operator<=>(const QVector& a, const QVector& b) { return a.e_ <=> b.e_; }

private:
    std::vector<Rational> e_;
};

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols);
    QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols_if_empty = 0);
    static QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows_if_empty = 0);
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    QVector row(std::size_t r) const;
    QVector col(std::size_t c) const;
    std::vector<QVector> row_list() const;
    std::vector<QVector> col_list() const;

    // Returns a copy with one entry replaced.
    QMatrix with(std::size_t r, std::size_t c, Rational v) const;

    std::string str() const;

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

QMatrix mat_mul(const QMatrix& a, const QMatrix& b);
QVector mat_vec(const QMatrix& a, const QVector& x);
QMatrix mat_add(const QMatrix& a, const QMatrix& b);
QMatrix mat_sub(const QMatrix& a, const QMatrix& b);
QMatrix mat_scale(const QMatrix& a, const Rational& s);
QMatrix mat_inverse(const QMatrix& a);
QVector mat_solve(const QMatrix& a, const QVector& b);
std::size_t mat_rank(const QMatrix& a);
QMatrix mat_transpose(const QMatrix& a);

// Nonzero rows of the reduced row echelon form.
QMatrix rref(const QMatrix& a);
// Basis of {x : a x = 0}, returned as the rows of an RREF matrix.
std::vector<QVector> nullspace(const QMatrix& a);
std::size_t rank_of(const std::vector<QVector>& rows, std::size_t dim);

using ZVector = std::vector<mpz_class>;
std::size_t integer_rank(std::vector<ZVector> rows);
// Positive multiple of a rational vector with coprime integer entries; zero stays zero.
ZVector primitive_integer(const QVector& v);
QVector to_qvector(const ZVector& v);

struct EntryDiff {
    std::size_t row;
    std::size_t col;
    Rational got;
    Rational want;
};
std::vector<EntryDiff> diff_entries(const QMatrix& got, const QMatrix& want);
std::string describe_diff(const QMatrix& got, const QMatrix& want, std::size_t max_entries = 12);

}  // namespace hilbcone
