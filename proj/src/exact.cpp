#include "hilbcone/exact.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace hilbcone {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

std::optional<Rational> Rational::parse(std::string_view text) {
    auto digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string_view body = text;
    bool neg = false;
    if (!body.empty() && body.front() == '-') {
        neg = true;
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view n = body.substr(0, slash);
    std::string_view d = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits(n) || !digits(d)) return std::nullopt;
    mpz_class num(std::string(n), 10);
    mpz_class den(std::string(d), 10);
    if (den == 0) return std::nullopt;
    if (neg) num = -num;
    return Rational(num, den);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }
Rational& Rational::operator+=(const Rational& o) { v_ += o.v_; return *this; }
Rational& Rational::operator-=(const Rational& o) { v_ -= o.v_; return *this; }
Rational& Rational::operator*=(const Rational& o) { v_ *= o.v_; return *this; }
Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

// ---------------------------------------------------------------- vectors

QVector QVector::unit(std::size_t n, std::size_t i) {
    std::vector<Rational> e(n);
    e.at(i) = 1;
    return QVector(std::move(e));
}

bool QVector::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rational& x) { return x.is_zero(); });
}

Rational QVector::dot(const QVector& o) const {
    if (o.size() != size()) throw DimensionError("dot: length " + std::to_string(size()) + " vs " + std::to_string(o.size()));
    mpq_class acc = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) acc += e_[i].raw() * o.e_[i].raw();
    return Rational(acc.get_num(), acc.get_den());
}

QVector QVector::scaled(const Rational& s) const {
    std::vector<Rational> out;
    out.reserve(e_.size());
    for (const auto& x : e_) out.push_back(x * s);
    return QVector(std::move(out));
}

std::string QVector::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i) s += ", ";
        s += e_[i].str();
    }
    return s + ")";
}

QVector operator+(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionError("vector add: length mismatch");
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return QVector(std::move(out));
}

QVector operator-(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw DimensionError("vector sub: length mismatch");
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return QVector(std::move(out));
}

// --------------------------------------------------------------- matrices

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix literal");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols_if_empty) {
    QMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw DimensionError("from_rows: ragged rows");
        std::copy(rows[r].begin(), rows[r].end(), m.a_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
    }
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols, std::size_t rows_if_empty) {
    return mat_transpose(from_rows(cols, rows_if_empty));
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

QVector QMatrix::row(std::size_t r) const {
    if (r >= rows_) throw DimensionError("row index out of range");
    auto first = a_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
    return QVector(std::vector<Rational>(first, first + static_cast<std::ptrdiff_t>(cols_)));
}

QVector QMatrix::col(std::size_t c) const {
    if (c >= cols_) throw DimensionError("column index out of range");
    std::vector<Rational> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return QVector(std::move(out));
}

std::vector<QVector> QMatrix::row_list() const {
    std::vector<QVector> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

std::vector<QVector> QMatrix::col_list() const {
    std::vector<QVector> out;
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(col(c));
    return out;
}

QMatrix QMatrix::with(std::size_t r, std::size_t c, Rational v) const {
    QMatrix m = *this;
    m.a_.at(r * cols_ + c) = std::move(v);
    return m;
}

std::string QMatrix::str() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) s += ", ";
        s += "[";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) s += ",";
            s += (*this)(r, c).str();
        }
        s += "]";
    }
    return s + "]";
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                             std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    std::vector<QVector> rows;
    rows.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::vector<mpq_class> acc(b.cols(), 0);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const mpq_class& x = a(i, k).raw();
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) acc[j] += x * b(k, j).raw();
        }
        std::vector<Rational> row;
        row.reserve(acc.size());
        for (auto& q : acc) row.emplace_back(q.get_num(), q.get_den());
        rows.emplace_back(std::move(row));
    }
    return QMatrix::from_rows(rows, b.cols());
}

QVector mat_vec(const QMatrix& a, const QVector& x) {
    if (a.cols() != x.size()) throw DimensionError("mat_vec: length mismatch");
    std::vector<Rational> out;
    out.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) out.push_back(a.row(i).dot(x));
    return QVector(std::move(out));
}

namespace {

QMatrix entrywise(const QMatrix& a, const QMatrix& b, bool subtract) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("entrywise: shape mismatch");
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(subtract ? a.row(i) - b.row(i) : a.row(i) + b.row(i));
    return QMatrix::from_rows(rows, a.cols());
}

using ZRow = std::vector<mpz_class>;

// Scales a rational row by the lcm of its denominators.
ZRow to_integer_row(const std::vector<Rational>& row) {
    mpz_class l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    ZRow out;
    out.reserve(row.size());
    for (const auto& x : row) out.push_back(x.num() * (l / x.den()));
    return out;
}

struct Echelon {
    std::vector<ZRow> m;
    std::vector<std::size_t> pivot_cols;
};

// Fraction-free Bareiss elimination restricted to the first `pivot_limit` columns.
Echelon bareiss(std::vector<ZRow> m, std::size_t pivot_limit) {
    Echelon e;
    mpz_class prev = 1;
    std::size_t r = 0;
    const std::size_t ncols = m.empty() ? 0 : m.front().size();
    for (std::size_t c = 0; c < pivot_limit && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        const mpz_class& piv = m[r][c];
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            for (std::size_t j = c + 1; j < ncols; ++j) {
                mpz_class t = piv * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = piv;
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.m = std::move(m);
    return e;
}

std::vector<ZRow> integer_rows(const QMatrix& a) {
    std::vector<ZRow> rows;
    rows.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(to_integer_row(a.row(i).entries()));
    return rows;
}

// Solves a X = B for square nonsingular a; B given column-wise as the tail of each row.
QMatrix solve_many(const QMatrix& a, const QMatrix& b) {
    if (!a.is_square()) throw DimensionError("expected a square matrix, got " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    if (b.rows() != a.rows()) throw DimensionError("right-hand side has " + std::to_string(b.rows()) + " rows, expected " + std::to_string(a.rows()));
    const std::size_t n = a.rows();
    std::vector<ZRow> aug;
    aug.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> row = a.row(i).entries();
        const QVector rhs = b.row(i);
        row.insert(row.end(), rhs.begin(), rhs.end());
        aug.push_back(to_integer_row(row));
    }
    Echelon e = bareiss(std::move(aug), n);
    if (e.pivot_cols.size() < n) throw SingularMatrixError(e.pivot_cols.size(), n);
    const std::size_t k = b.cols();
    std::vector<std::vector<mpq_class>> x(n, std::vector<mpq_class>(k));
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = 0; j < k; ++j) {
            mpq_class acc(e.m[ii][n + j]);
            for (std::size_t c = ii + 1; c < n; ++c) acc -= mpq_class(e.m[ii][c]) * x[c][j];
            acc /= mpq_class(e.m[ii][ii]);
            x[ii][j] = acc;
        }
    }
    std::vector<QVector> rows;
    rows.reserve(n);
    for (const auto& xr : x) {
        std::vector<Rational> row;
        row.reserve(k);
        for (const auto& q : xr) row.emplace_back(q.get_num(), q.get_den());
        rows.emplace_back(std::move(row));
    }
    return QMatrix::from_rows(rows, k);
}

}  // namespace

QMatrix mat_add(const QMatrix& a, const QMatrix& b) { return entrywise(a, b, false); }
QMatrix mat_sub(const QMatrix& a, const QMatrix& b) { return entrywise(a, b, true); }

QMatrix mat_scale(const QMatrix& a, const Rational& s) {
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i).scaled(s));
    return QMatrix::from_rows(rows, a.cols());
}

QMatrix mat_inverse(const QMatrix& a) { return solve_many(a, QMatrix::identity(a.rows())); }

QVector mat_solve(const QMatrix& a, const QVector& b) {
    if (b.size() != a.rows()) throw DimensionError("mat_solve: rhs length " + std::to_string(b.size()) + ", expected " + std::to_string(a.rows()));
    return solve_many(a, QMatrix::from_columns({b})).col(0);
}

std::size_t mat_rank(const QMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return bareiss(integer_rows(a), a.cols()).pivot_cols.size();
}

std::size_t rank_of(const std::vector<QVector>& rows, std::size_t dim) {
    if (rows.empty()) return 0;
    return mat_rank(QMatrix::from_rows(rows, dim));
}

std::size_t integer_rank(std::vector<ZVector> rows) {
    if (rows.empty() || rows.front().empty()) return 0;
    const std::size_t n = rows.front().size();
    return bareiss(std::move(rows), n).pivot_cols.size();
}

ZVector primitive_integer(const QVector& v) {
    ZVector z = to_integer_row(v.entries());
    mpz_class g = 0;
    for (const auto& x : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : z) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return z;
}

QVector to_qvector(const ZVector& v) {
    std::vector<Rational> e;
    e.reserve(v.size());
    for (const auto& x : v) e.emplace_back(x);
    return QVector(std::move(e));
}

QMatrix mat_transpose(const QMatrix& a) {
    std::vector<QVector> rows;
    for (std::size_t c = 0; c < a.cols(); ++c) rows.push_back(a.col(c));
    return QMatrix::from_rows(rows, a.rows());
}

QMatrix rref(const QMatrix& a) {
    std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j).raw();
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && sgn(m[p][c]) == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        mpq_class piv = m[r][c];
        for (auto& x : m[r]) x /= piv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            mpq_class f = m[i][c];
            for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    std::vector<QVector> rows;
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Rational> row;
        for (auto& x : m[i]) row.emplace_back(x.get_num(), x.get_den());
        rows.emplace_back(std::move(row));
    }
    return QMatrix::from_rows(rows, a.cols());
}

std::vector<QVector> nullspace(const QMatrix& a) {
    const std::size_t n = a.cols();
    QMatrix r = rref(a);
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        std::size_t c = 0;
        while (r(i, c).is_zero()) ++c;
        pivots.push_back(c);
    }
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
        std::vector<Rational> v(n);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
        basis.emplace_back(std::move(v));
    }
    if (basis.empty()) return basis;
    return rref(QMatrix::from_rows(basis)).row_list();
}

std::vector<EntryDiff> diff_entries(const QMatrix& got, const QMatrix& want) {
    if (got.rows() != want.rows() || got.cols() != want.cols())
        throw DimensionError("shape " + std::to_string(got.rows()) + "x" + std::to_string(got.cols()) + " vs " +
                             std::to_string(want.rows()) + "x" + std::to_string(want.cols()));
    std::vector<EntryDiff> out;
    for (std::size_t i = 0; i < got.rows(); ++i)
        for (std::size_t j = 0; j < got.cols(); ++j)
            if (got(i, j) != want(i, j)) out.push_back({i, j, got(i, j), want(i, j)});
    return out;
}

std::string describe_diff(const QMatrix& got, const QMatrix& want, std::size_t max_entries) {
    if (got.rows() != want.rows() || got.cols() != want.cols())
        return "shape " + std::to_string(got.rows()) + "x" + std::to_string(got.cols()) + " vs expected " +
               std::to_string(want.rows()) + "x" + std::to_string(want.cols());
    auto d = diff_entries(got, want);
    if (d.empty()) return "equal";
    std::ostringstream os;
    os << d.size() << " differing entries:";
    for (std::size_t i = 0; i < d.size() && i < max_entries; ++i)
        os << " (" << d[i].row + 1 << "," << d[i].col + 1 << ") got " << d[i].got.str() << " want " << d[i].want.str() << ";";
    if (d.size() > max_entries) os << " ...";
    return os.str();
}

}  // namespace hilbcone
