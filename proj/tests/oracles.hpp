#pragma once

// Test-only reference implementations. Nothing here calls the elimination,
// ball, or maximum-principle code it is used to check.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "graph_sections/elimination.hpp"
#include "graph_sections/graph.hpp"
#include "graph_sections/operator.hpp"
#include "graph_sections/scalar.hpp"

namespace oracle {

using graph_sections::FunctionOnV;
using graph_sections::Graph;
using graph_sections::Matrix;
using graph_sections::Operator;
using graph_sections::Scalar;
using graph_sections::VertexKey;

struct Elimination {
    Scalar determinant;
    std::size_t rank = 0;
};

/// Textbook Gauss-Jordan over the field, dividing by the pivot at every step.
inline Elimination naive_eliminate(const Matrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::vector<Scalar>> a(rows, std::vector<Scalar>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = m(i, j);
    Scalar det = Scalar::one(m.mode());
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero())
            ++p;
        if (p == rows) {
            det = Scalar::zero(m.mode());
            continue;
        }
        if (p != r) {
            std::swap(a[p], a[r]);
            det = -det;
        }
        det *= a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c].is_zero())
                continue;
            Scalar f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    if (rows != cols || r < rows)
        det = Scalar::zero(m.mode());
    return {det, r};
}

/// Solves a square nonsingular system by Gauss-Jordan on [m | b].
inline std::optional<std::vector<Scalar>> naive_solve(const Matrix& m, const std::vector<Scalar>& b)
{
    const std::size_t n = m.rows();
    std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = m(i, j);
        a[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero())
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(a[p], a[c]);
        Scalar inv = Scalar::one(m.mode()) / a[c][c];
        for (auto& x : a[c])
            x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero())
                continue;
            Scalar f = a[i][c];
            for (std::size_t j = c; j <= n; ++j)
                a[i][j] -= f * a[c][j];
        }
    }
    std::vector<Scalar> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a[i][n];
    return x;
}

/// Laplace expansion along the first row; small matrices only.
inline Scalar cofactor_determinant(const std::vector<std::vector<Scalar>>& a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return Scalar(1);
    if (n == 1)
        return a[0][0];
    Scalar det;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c].is_zero())
            continue;
        std::vector<std::vector<Scalar>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Scalar> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c)
                    row.push_back(a[i][j]);
            minor.push_back(std::move(row));
        }
        Scalar term = a[0][c] * cofactor_determinant(minor);
        det += (c % 2 == 0) ? term : -term;
    }
    return det;
}

/// Endpoints of all directed walks of length <= n from v, and start points of
/// all directed walks of length <= n into v, by exhaustive depth-first
/// expansion (no visited set).
inline std::set<VertexKey> path_ball(const Graph& g, const VertexKey& v, std::size_t n)
{
    std::set<VertexKey> out{v};
    std::function<void(const VertexKey&, std::size_t, bool)> walk = [&](const VertexKey& u, std::size_t left,
                                                                         bool forward) {
        out.insert(u);
        if (left == 0)
            return;
        auto nb = g.neighbors(u);
        for (const auto& w : forward ? nb.out : nb.in)
            walk(w, left - 1, forward);
    };
    walk(v, n, true);
    walk(v, n, false);
    return out;
}

/// Re-checks the three conditions of a maximum-principle counterexample at v
/// over the ball `region`: A f(v) = 0, |f(v)| maximal on the region, and some
/// |f(w)| differing from |f(v)|. Magnitudes compared by squared modulus.
inline bool recheck_witness(const Operator& op, const VertexKey& v, const std::set<VertexKey>& region,
                            const FunctionOnV& f)
{
    Scalar value;
    for (const auto& [w, c] : op.row(v).coeffs)
        value += c * f(w);
    if (!value.is_zero())
        return false;
    auto sq = [](const Scalar& s) { return s.gaussian_value().norm(); };
    const auto center = sq(f(v));
    bool differs = false;
    for (const auto& w : region) {
        auto m = sq(f(w));
        if (m > center)
            return false;
        if (m != center)
            differs = true;
    }
    return differs;
}

/// Random rational p/q with |p| <= max_num and 1 <= q <= max_den.
inline Scalar random_rational(std::mt19937_64& rng, long max_num, long max_den)
{
    long p = std::uniform_int_distribution<long>(-max_num, max_num)(rng);
    long q = std::uniform_int_distribution<long>(1, max_den)(rng);
    return Scalar::fraction(p, q);
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long max_num, long max_den)
{
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = random_rational(rng, max_num, max_den);
    return m;
}

} // namespace oracle
