#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graph_sections/elimination.hpp"
#include "graph_sections/graph.hpp"
#include "graph_sections/operator.hpp"

namespace graph_sections {

/// k x k matrix of the truncated operator M_k A restricted to the first k
/// coordinates: entry (i, j) is the coefficient of row(v_i) at v_j.
struct SectionMatrix {
    std::size_t k = 0;
    Enumeration enumeration;
    Matrix entries;

    ScalarMode mode() const { return entries.mode(); }
};

/// Untruncated row functionals A_1..A_k. Columns are the window positions
/// 1..k followed by every other support vertex in ascending key order, so the
/// section is the leading k x k block.
struct RowsMatrix {
    std::size_t k = 0;
    std::vector<VertexKey> columns;
    Matrix entries;
};

/// Throws EnumerationTooShort when the enumeration has fewer than k entries.
SectionMatrix build_section(const Operator& op, const Enumeration& e, std::size_t k);
RowsMatrix build_rows_matrix(const Operator& op, const Enumeration& e, std::size_t k);

Scalar determinant(const SectionMatrix& m);
std::size_t rank(const SectionMatrix& m);
std::size_t rank(const RowsMatrix& m);

/// Exact modes: rank == k. Float mode: |det| > epsilon, a heuristic verdict.
bool is_injective(const SectionMatrix& m);
std::vector<std::vector<Scalar>> kernel_basis(const SectionMatrix& m);

/// Linear independence of the row functionals A_1..A_k.
bool rows_independent(const Operator& op, const Enumeration& e, std::size_t k);

/// p_k(f) = sum over the first k positions of |f(v_j)|. Gaussian values
/// contribute their squared modulus, which keeps the result rational.
Scalar seminorm(const FunctionOnV& f, const Enumeration& e, std::size_t k);

/// Sparse triplet dump `(i, j, "p/q")`, 1-based, one entry per line.
std::string to_triplets(const Matrix& m);

} // namespace graph_sections
