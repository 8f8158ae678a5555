#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graph_sections/scalar.hpp"

namespace graph_sections {

/// Dense row-major matrix of scalars.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, ScalarMode mode = ScalarMode::rational)
        : rows_(rows), cols_(cols), mode_(mode), data_(rows * cols, Scalar::zero(mode))
    {
    }

    static Matrix identity(std::size_t n, ScalarMode mode = ScalarMode::rational);
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, ScalarMode mode = ScalarMode::rational);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    ScalarMode mode() const { return mode_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Scalar> multiply(const std::vector<Scalar>& x) const;
    Matrix to_mode(ScalarMode mode) const;

    /// Same shape and exactly equal entries.
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    ScalarMode mode_ = ScalarMode::rational;
    std::vector<Scalar> data_;
};

/// Fraction-free (Bareiss) elimination. Rows are first scaled by the lcm of
/// their denominators so that every intermediate value is an integer (or a
/// gaussian integer) and every division is exact. Pivots are the first
/// nonzero entry in column order.
namespace fraction_free {

Scalar determinant(const Matrix& m);
std::size_t rank(const Matrix& m);

struct SolveResult {
    Scalar determinant;
    /// Empty when the matrix is singular.
    std::optional<std::vector<Scalar>> solution;
};

/// Solves the square system m x = b.
SolveResult solve(const Matrix& m, const std::vector<Scalar>& b);

} // namespace fraction_free

/// Null-space basis from the reduced row echelon form; one vector per free
/// column, with a 1 in that column. Each vector is re-checked by exact
/// multiplication before it is returned.
std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m);

/// Floating determinant with partial pivoting, for exploratory float mode.
double float_determinant(const Matrix& m);

} // namespace graph_sections
