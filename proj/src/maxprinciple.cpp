#include "graph_sections/maxprinciple.hpp"

#include <deque>
#include <random>

#include "graph_sections/errors.hpp"

namespace graph_sections {

std::string to_string(PrincipleStatus status)
{
    switch (status) {
    case PrincipleStatus::structural_strict:
        return "StructuralStrict";
    case PrincipleStatus::structural_equality:
        return "StructuralEquality";
    case PrincipleStatus::falsified:
        return "Falsified";
    case PrincipleStatus::unknown:
        return "Unknown";
    }
    return "?";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::size_t radius_used(const Operator& op, const StencilRow& row)
{
    return std::max(row.radius, op.principle_radius());
}

} // namespace

MaxPrincipleCertificate check_structural(const Operator& op, const VertexKey& v)
{
    if (!is_exact(op.mode()))
        throw FloatModeUnsupported("structural maximum-principle certificates require an exact scalar mode");
    StencilRow row = op.row(v);
    MaxPrincipleCertificate cert{v, PrincipleStatus::unknown, std::nullopt, radius_used(op, row)};

    Scalar diag = row.diagonal();
    if (diag.is_zero() || !diag.is_real())
        return cert;
    // Sums of moduli of non-real coefficients are irrational in general; those
    // rows stay Unknown.
    Rational off_sum = 0;
    for (const auto& [w, c] : row.coeffs) {
        if (w == v)
            continue;
        if (!c.is_real())
            return cert;
        off_sum += abs(c.gaussian_value().re);
    }
    Rational d = abs(diag.gaussian_value().re);

    if (d > off_sum) {
        cert.status = PrincipleStatus::structural_strict;
    } else if (d == off_sum) {
        for (const auto& w : ball(op.graph(), v, cert.radius_used))
            if (w != v && row.coefficient(w).is_zero())
                return cert;
        cert.status = PrincipleStatus::structural_equality;
    }
    return cert;
}

bool is_violation(const Operator& op, const VertexKey& v, std::size_t radius, const FunctionOnV& witness)
{
    if (!apply(op, witness, v).is_zero())
        return false;
    const Scalar center = witness(v);
    bool differs = false;
    for (const auto& w : ball(op.graph(), v, radius)) {
        auto c = compare_magnitude(witness(w), center);
        if (c > 0)
            return false;
        if (c != 0)
            differs = true;
    }
    return differs;
}

std::optional<FunctionOnV> falsify(const Operator& op, const VertexKey& v, std::size_t trials, std::uint64_t seed)
{
    StencilRow row = op.row(v);
    std::vector<std::pair<VertexKey, Scalar>> off;
    for (const auto& entry : row.coeffs)
        if (entry.first != v)
            off.push_back(entry);
    if (off.empty())
        throw NoOffDiagonal("row at \"" + v.to_string() + "\" has no off-diagonal coefficient to solve for");

    const std::size_t radius = radius_used(op, row);
    const auto region = ball(op.graph(), v, radius);
    const std::uint64_t vertex_hash = fnv1a(v.to_string());
    const ScalarMode mode = op.mode();

    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(vertex_hash ^ splitmix64(t))));
        std::uniform_int_distribution<long> den_dist(1, 4);
        const auto& [target, target_coeff] = off[t % off.size()];

        // |f(v)| = 1 and every other sampled value lies in [-1, 1], so the
        // maximality premise only depends on the solved coordinate.
        FunctionOnV f;
        f.set(v, Scalar(rng() % 2 ? 1 : -1).to_mode(mode));
        for (const auto& w : region) {
            if (w == v || w == target)
                continue;
            long q = den_dist(rng);
            long p = std::uniform_int_distribution<long>(-q, q)(rng);
            f.set(w, Scalar::fraction(p, q).to_mode(mode));
        }
        Scalar rest = Scalar::zero(mode);
        for (const auto& [w, c] : row.coeffs)
            if (w != target)
                rest += c * f(w);
        f.set(target, -rest / target_coeff);

        if (is_violation(op, v, radius, f))
            return f;
    }
    return std::nullopt;
}

PropagationCertificate propagation_certificate(const Operator& op, const Enumeration& e, std::size_t k)
{
    if (!is_exact(op.mode()))
        throw FloatModeUnsupported("propagation certificates require an exact scalar mode");
    if (k == 0 || e.size() < k)
        throw EnumerationTooShort("propagation certificate needs " + std::to_string(k) + " enumerated vertices");

    PropagationCertificate cert;
    cert.k = k;
    cert.window_only = op.graph().finite();
    std::vector<RowSupport> supports;
    supports.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        auto mp = check_structural(op, e.at(j));
        if (mp.status == PrincipleStatus::unknown)
            throw PremiseFailed("no structural maximum-principle certificate at \"" + e.at(j).to_string() +
                                "\" (position " + std::to_string(j + 1) + ")");
        cert.statuses.push_back(mp.status);
        supports.push_back(row_support_indices(op, e, j, k, mp.radius_used));
    }

    // Backward BFS from terminal positions; next_hop points one step closer.
    std::vector<std::vector<std::size_t>> reverse(k);
    for (std::size_t j = 0; j < k; ++j)
        for (auto l : supports[j].positions)
            if (l != j)
                reverse[l].push_back(j);

    std::vector<bool> reached(k, false);
    std::vector<std::size_t> next_hop(k, k);
    std::deque<std::size_t> queue;
    for (std::size_t j = 0; j < k; ++j) {
        if (supports[j].leaves_window() || cert.statuses[j] == PrincipleStatus::structural_strict) {
            reached[j] = true;
            queue.push_back(j);
        }
    }
    while (!queue.empty()) {
        auto l = queue.front();
        queue.pop_front();
        for (auto j : reverse[l]) {
            if (!reached[j]) {
                reached[j] = true;
                next_hop[j] = l;
                queue.push_back(j);
            }
        }
    }

    cert.traces.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (!reached[j]) {
            cert.stuck.push_back(j);
            continue;
        }
        EscapeTrace trace;
        for (auto p = j; p != k; p = next_hop[p])
            trace.path.push_back(p);
        auto terminal = trace.path.back();
        if (supports[terminal].leaves_window())
            trace.exit = supports[terminal].outside.front();
        else
            trace.strict_terminal = true;
        cert.traces[j] = std::move(trace);
    }
    cert.certified = cert.stuck.empty();
    return cert;
}

} // namespace graph_sections
