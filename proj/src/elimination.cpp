#include "graph_sections/elimination.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "graph_sections/errors.hpp"

namespace graph_sections {

Matrix Matrix::identity(std::size_t n, ScalarMode mode)
{
    Matrix m(n, n, mode);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Scalar::one(mode);
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows, ScalarMode mode)
{
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols, mode);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j].to_mode(mode);
    }
    return m;
}

std::vector<Scalar> Matrix::multiply(const std::vector<Scalar>& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("dimension mismatch in matrix-vector product");
    std::vector<Scalar> y(rows_, Scalar::zero(mode_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(i, j).is_zero())
                y[i] += (*this)(i, j) * x[j];
    return y;
}

Matrix Matrix::to_mode(ScalarMode mode) const
{
    Matrix m(rows_, cols_, mode);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = data_[i].to_mode(mode);
    return m;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        if (!(a.data_[i] == b.data_[i]))
            return false;
    return true;
}

namespace {

void require_exact(const Matrix& m, const char* what)
{
    if (!is_exact(m.mode()))
        throw FloatModeUnsupported(std::string(what) + " requires an exact scalar mode");
}

struct Echelon {
    Matrix work;
    std::vector<std::size_t> pivot_cols;
    int sign = 1;
    /// Product of the row scalings applied before elimination.
    Scalar scale;
};

// Multiplies each row by the lcm of its denominators (columns [0, cols)).
Scalar clear_denominators(Matrix& m)
{
    Integer total = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero())
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).denominator_lcm().get_mpz_t());
        if (l != 1) {
            Scalar s{Rational(l)};
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) *= s;
        }
        total *= l;
    }
    return Scalar(Rational(total)).to_mode(m.mode());
}

// Bareiss elimination to row echelon form, pivoting only in the first
// `pivot_limit` columns.
Echelon bareiss(Matrix m, std::size_t pivot_limit)
{
    Echelon out;
    out.scale = clear_denominators(m);
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    Scalar prev = Scalar::one(m.mode());
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c).is_zero())
            ++p;
        if (p == rows)
            continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
            out.sign = -out.sign;
        }
        const Scalar pivot = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Scalar factor = m(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                Scalar v = pivot * m(i, j);
                if (!factor.is_zero())
                    v -= factor * m(r, j);
                m(i, j) = v / prev;
            }
            m(i, c) = Scalar::zero(m.mode());
        }
        prev = pivot;
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.work = std::move(m);
    return out;
}

} // namespace

namespace fraction_free {

Scalar determinant(const Matrix& m)
{
    require_exact(m, "determinant");
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return Scalar::one(m.mode());
    Echelon e = bareiss(m, n);
    if (e.pivot_cols.size() < n)
        return Scalar::zero(m.mode());
    Scalar det = e.work(n - 1, n - 1) / e.scale;
    return e.sign < 0 ? -det : det;
}

std::size_t rank(const Matrix& m)
{
    require_exact(m, "rank");
    return bareiss(m, m.cols()).pivot_cols.size();
}

SolveResult solve(const Matrix& m, const std::vector<Scalar>& b)
{
    require_exact(m, "solve");
    const std::size_t n = m.rows();
    if (m.cols() != n || b.size() != n)
        throw std::invalid_argument("solve needs a square system");
    Matrix aug(n, n + 1, m.mode());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n) = b[i].to_mode(m.mode());
    }
    Echelon e = bareiss(std::move(aug), n);
    if (e.pivot_cols.size() < n)
        return {Scalar::zero(m.mode()), std::nullopt};

    // Row scalings also covered the right-hand side; dividing by their full
    // product still recovers det(m).
    Scalar det = e.work(n - 1, n - 1) / e.scale;
    if (e.sign < 0)
        det = -det;

    std::vector<Scalar> x(n, Scalar::zero(m.mode()));
    for (std::size_t i = n; i-- > 0;) {
        Scalar acc = e.work(i, n);
        for (std::size_t j = i + 1; j < n; ++j)
            if (!e.work(i, j).is_zero())
                acc -= e.work(i, j) * x[j];
        x[i] = acc / e.work(i, i);
    }
    return {det, std::move(x)};
}

} // namespace fraction_free

std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m)
{
    require_exact(m, "kernel_basis");
    Matrix a = m;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c).is_zero())
            ++p;
        if (p == rows)
            continue;
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(a(p, j), a(r, j));
        const Scalar inv = Scalar::one(a.mode()) / a(r, c);
        for (std::size_t j = c; j < cols; ++j)
            a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c).is_zero())
                continue;
            const Scalar factor = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                a(i, j) -= factor * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols)
        is_pivot[c] = true;

    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Scalar> v(cols, Scalar::zero(m.mode()));
        v[free] = Scalar::one(m.mode());
        for (std::size_t i = 0; i < pivot_cols.size(); ++i)
            v[pivot_cols[i]] = -a(i, free);
        for (const auto& y : m.multiply(v))
            if (!y.is_zero())
                throw std::logic_error("kernel vector failed exact re-verification");
        basis.push_back(std::move(v));
    }
    return basis;
}

double float_determinant(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = m(i, j).to_double();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(a[i * n + c]) > std::fabs(a[p * n + c]))
                p = i;
        if (a[p * n + c] == 0.0)
            return 0.0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a[p * n + j], a[c * n + j]);
            det = -det;
        }
        det *= a[c * n + c];
        for (std::size_t i = c + 1; i < n; ++i) {
            double f = a[i * n + c] / a[c * n + c];
            for (std::size_t j = c; j < n; ++j)
                a[i * n + j] -= f * a[c * n + j];
        }
    }
    return det;
}

} // namespace graph_sections
