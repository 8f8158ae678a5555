#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "graph_sections/errors.hpp"
#include "graph_sections/operator.hpp"
#include "graph_sections/sections.hpp"

namespace graph_sections {

/// The k-section has a nontrivial kernel; carries a basis of it.
class SingularSection : public CertificateFailure {
public:
    SingularSection(std::size_t k, std::vector<std::vector<Scalar>> kernel);

    std::size_t k() const noexcept { return k_; }
    const std::vector<std::vector<Scalar>>& kernel() const noexcept { return kernel_; }

private:
    std::size_t k_;
    std::vector<std::vector<Scalar>> kernel_;
};

/// Exact preimage on a window: A f(v_j) = g(v_j) for every j < k, with f
/// supported in the first k positions.
struct SectionSolution {
    std::size_t k = 0;
    FunctionOnV f;
    Scalar determinant;
    bool residual_checked = false;
};

struct StabilizationReport {
    std::vector<std::size_t> ladder;
    std::size_t window = 1;
    /// traces[j] holds (k, f_k(v_j)) for every ladder entry with j < k.
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> traces;
    /// stable[j]: f_k(v_j) identical over the last `window` ladder entries.
    std::vector<bool> stable;
};

/// Solves M_k A f = M_k g by fraction-free elimination and audits the
/// residual. Throws SingularSection, FloatModeUnsupported.
SectionSolution solve_section(const Operator& op, const Enumeration& e, const FunctionOnV& g, std::size_t k);

/// One solution per ladder entry (solved concurrently) plus coordinate traces.
/// A singular entry raises SingularSection tagged with its k.
std::pair<std::vector<SectionSolution>, StabilizationReport>
solve_progressive(const Operator& op, const Enumeration& e, const FunctionOnV& g, const std::vector<std::size_t>& ladder,
                  std::size_t stability_window);

struct Residual {
    std::size_t position = 0;
    VertexKey vertex;
    Scalar value;
};

/// A f(v_j) - g(v_j) for each requested 0-based position.
std::vector<Residual> verify(const Operator& op, const FunctionOnV& f, const FunctionOnV& g, const Enumeration& e,
                             const std::vector<std::size_t>& positions);

bool all_zero(const std::vector<Residual>& residuals);

} // namespace graph_sections
