#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graph_sections/graph.hpp"
#include "graph_sections/operator.hpp"

namespace graph_sections {

enum class PrincipleStatus { structural_strict, structural_equality, falsified, unknown };

std::string to_string(PrincipleStatus status);

/// Verdict on the pointwise maximum principle at one vertex: if A f(v) = 0
/// and |f(v)| is maximal on the ball U_n(v), then |f| is constant there.
///
/// Structural certificates rest on the dominance estimate
///     |a_vv| |f(v)| = |sum_{w != v} a_vw f(w)| <= sum_{w != v} |a_vw| |f(v)|.
/// Strict dominance forces f(v) = 0, hence f = 0 on the ball. Equality
/// dominance forces |f(w)| = |f(v)| wherever a_vw != 0, which covers the whole
/// ball when the row has full support on it.
struct MaxPrincipleCertificate {
    VertexKey vertex;
    PrincipleStatus status = PrincipleStatus::unknown;
    std::optional<FunctionOnV> witness;
    /// max(row radius, operator principle radius).
    std::size_t radius_used = 0;
};

/// Sufficient structural check; never returns `falsified`. Throws
/// FloatModeUnsupported in float mode.
MaxPrincipleCertificate check_structural(const Operator& op, const VertexKey& v);

/// Seeded search for a counterexample. Each trial samples f on the ball from
/// a small rational lattice, solves A f(v) = 0 for one support coordinate and
/// tests the implication. Trials are determined by (seed, vertex, trial).
/// Throws NoOffDiagonal when the row has no off-diagonal coefficient.
std::optional<FunctionOnV> falsify(const Operator& op, const VertexKey& v, std::size_t trials, std::uint64_t seed);

/// Whether `witness` violates the principle at v for the given radius.
bool is_violation(const Operator& op, const VertexKey& v, std::size_t radius, const FunctionOnV& witness);

struct EscapeTrace {
    /// 0-based positions from the start to the terminal position.
    std::vector<std::size_t> path;
    /// The terminal either has support outside the window or is strict.
    bool strict_terminal = false;
    /// Support vertex outside the window reached from the terminal, if any.
    std::optional<VertexKey> exit;
};

struct PropagationCertificate {
    std::size_t k = 0;
    bool certified = false;
    std::vector<PrincipleStatus> statuses;
    /// One trace per position when certified; positions without escape are
    /// listed in `stuck`.
    std::vector<std::optional<EscapeTrace>> traces;
    std::vector<std::size_t> stuck;
    /// True when the window covers the whole graph (finite demo graphs).
    bool window_only = false;
};

/// Injectivity certificate for the k-section from the maximum principle:
/// a maximizing coordinate of a kernel vector spreads its modulus along the
/// support digraph of the window; if every position can reach a row leaving
/// the window (where f vanishes) or a strictly dominant row, the kernel is
/// trivial. Throws PremiseFailed if some v_j, j < k, has no structural
/// certificate, FloatModeUnsupported in float mode.
PropagationCertificate propagation_certificate(const Operator& op, const Enumeration& e, std::size_t k);

} // namespace graph_sections
