#include "graph_sections/solver.hpp"

#include <algorithm>
#include <future>
#include <numeric>

namespace graph_sections {

SingularSection::SingularSection(std::size_t k, std::vector<std::vector<Scalar>> kernel)
    : CertificateFailure("section k=" + std::to_string(k) + " is singular (kernel dimension " +
                         std::to_string(kernel.size()) + ")"),
      k_(k),
      kernel_(std::move(kernel))
{
}

SectionSolution solve_section(const Operator& op, const Enumeration& e, const FunctionOnV& g, std::size_t k)
{
    if (!is_exact(op.mode()))
        throw FloatModeUnsupported("solve_section requires an exact scalar mode");
    SectionMatrix section = build_section(op, e, k);

    std::vector<Scalar> rhs;
    rhs.reserve(k);
    for (std::size_t j = 0; j < k; ++j)
        rhs.push_back(g(e.at(j)).to_mode(op.mode()));

    auto result = fraction_free::solve(section.entries, rhs);
    if (!result.solution)
        throw SingularSection(k, kernel_basis(section));

    SectionSolution out;
    out.k = k;
    out.determinant = result.determinant;
    for (std::size_t j = 0; j < k; ++j)
        out.f.set(e.at(j), (*result.solution)[j]);

    std::vector<std::size_t> window(k);
    std::iota(window.begin(), window.end(), std::size_t{0});
    if (!all_zero(verify(op, out.f, g, e, window)))
        throw std::logic_error("exact solve left a nonzero residual");
    out.residual_checked = true;
    return out;
}

std::pair<std::vector<SectionSolution>, StabilizationReport>
solve_progressive(const Operator& op, const Enumeration& e, const FunctionOnV& g, const std::vector<std::size_t>& ladder,
                  std::size_t stability_window)
{
    if (ladder.empty())
        throw std::invalid_argument("k ladder is empty");
    if (!std::is_sorted(ladder.begin(), ladder.end()) ||
        std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end())
        throw std::invalid_argument("k ladder must be strictly ascending");
    if (stability_window == 0 || stability_window > ladder.size())
        throw std::invalid_argument("stability window must lie in [1, ladder length]");

    std::vector<std::future<SectionSolution>> jobs;
    jobs.reserve(ladder.size());
    for (auto k : ladder)
        jobs.push_back(std::async(std::launch::async, [&, k] { return solve_section(op, e, g, k); }));

    std::vector<SectionSolution> solutions;
    std::optional<SingularSection> failure;
    for (auto& job : jobs) {
        try {
            solutions.push_back(job.get());
        } catch (const SingularSection& s) {
            // Report the smallest singular k; drain the remaining futures.
            if (!failure)
                failure.emplace(s);
        }
    }
    if (failure)
        throw *failure;

    StabilizationReport report;
    report.ladder = ladder;
    report.window = stability_window;
    const std::size_t width = ladder.back();
    report.traces.resize(width);
    report.stable.assign(width, false);
    for (const auto& s : solutions)
        for (std::size_t j = 0; j < s.k; ++j)
            report.traces[j].emplace_back(s.k, s.f(e.at(j)));

    const std::size_t first_k = ladder[ladder.size() - stability_window];
    for (std::size_t j = 0; j < width; ++j) {
        if (j >= first_k)
            continue;
        const auto& trace = report.traces[j];
        const auto& last = trace.back().second;
        report.stable[j] = std::all_of(trace.end() - static_cast<std::ptrdiff_t>(stability_window), trace.end(),
                                       [&](const auto& entry) { return entry.second.identical(last); });
    }
    return {std::move(solutions), std::move(report)};
}

std::vector<Residual> verify(const Operator& op, const FunctionOnV& f, const FunctionOnV& g, const Enumeration& e,
                             const std::vector<std::size_t>& positions)
{
    std::vector<Residual> out;
    out.reserve(positions.size());
    for (auto j : positions) {
        const VertexKey& v = e.at(j);
        out.push_back({j, v, apply(op, f, v) - g(v)});
    }
    return out;
}

bool all_zero(const std::vector<Residual>& residuals)
{
    return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.value.is_zero(); });
}

} // namespace graph_sections
