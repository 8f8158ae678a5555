#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graph_sections/graph.hpp"
#include "graph_sections/scalar.hpp"

namespace graph_sections {

/// Finitely supported function V -> K. Zeros are never stored; lookups
/// outside the support return exact zero.
class FunctionOnV {
public:
    FunctionOnV() = default;
    FunctionOnV(std::initializer_list<std::pair<const VertexKey, Scalar>> values);

    Scalar operator()(const VertexKey& v) const;
    void set(const VertexKey& v, Scalar value);
    void add(const VertexKey& v, const Scalar& value);

    const std::map<VertexKey, Scalar>& support() const { return values_; }
    bool empty() const { return values_.empty(); }

    FunctionOnV scaled(const Scalar& c) const;
    FunctionOnV to_mode(ScalarMode mode) const;

    friend FunctionOnV operator+(const FunctionOnV& a, const FunctionOnV& b);
    friend bool operator==(const FunctionOnV& a, const FunctionOnV& b);

private:
    std::map<VertexKey, Scalar> values_;
};

/// The row functional of an operator at one vertex: A f(v) = sum_w c_w f(w).
/// Coefficients are sorted by key and never zero; their support lies in
/// ball(vertex, radius).
struct StencilRow {
    VertexKey vertex;
    std::size_t radius = 0;
    std::vector<std::pair<VertexKey, Scalar>> coeffs;

    Scalar coefficient(const VertexKey& w) const;
    Scalar diagonal() const { return coefficient(vertex); }
};

/// Builds a row from an arbitrary coefficient list: merges duplicates, drops
/// zeros, sorts.
StencilRow make_row(VertexKey vertex, std::size_t radius, std::vector<std::pair<VertexKey, Scalar>> coeffs);

/// Nonnegative potential: a finite table over a constant background.
struct Potential {
    FunctionOnV table;
    Rational background = 0;

    Rational at(const VertexKey& v) const;
};

/// Linear operator on K^V with finite hopping range, given row by row.
///
/// `principle_radius` is an optional radius for maximum-principle checks; the
/// effective radius there is max(row radius, principle_radius).
class Operator {
public:
    using RowFn = std::function<StencilRow(const VertexKey&)>;

    Operator(std::string name, Graph graph, RowFn row, ScalarMode mode,
             std::optional<std::size_t> uniform_radius = std::nullopt, std::size_t principle_radius = 0);

    const std::string& name() const { return name_; }
    const Graph& graph() const { return graph_; }
    ScalarMode mode() const { return mode_; }
    std::optional<std::size_t> uniform_radius() const { return uniform_radius_; }
    std::size_t principle_radius() const { return principle_radius_; }

    /// Row at v with coefficients converted to the operator's scalar mode.
    StencilRow row(const VertexKey& v) const;

    Operator with_principle_radius(std::size_t radius) const;

private:
    std::string name_;
    Graph graph_;
    RowFn row_;
    ScalarMode mode_;
    std::optional<std::size_t> uniform_radius_;
    std::size_t principle_radius_;
};

/// Combinatorial Laplacian row: f(v) - (1/deg v) sum_{w ~ v} f(w).
StencilRow laplacian_row(const Graph& g, const VertexKey& v);
/// Laplacian row with diagonal 1 + lambda(v).
StencilRow laplacian_plus_lambda_row(const Graph& g, const Potential& lambda, const VertexKey& v);
/// Out-adjacency row (no diagonal). Fails the maximum principle.
StencilRow adjacency_row(const Graph& g, const VertexKey& v);

Operator laplacian(const Graph& g, ScalarMode mode = ScalarMode::rational);
Operator laplacian_plus_lambda(const Graph& g, Potential lambda, ScalarMode mode = ScalarMode::rational);
Operator adjacency(const Graph& g, ScalarMode mode = ScalarMode::rational);

using RowTable = std::map<VertexKey, std::vector<std::pair<VertexKey, Scalar>>>;

/// Operator given by an explicit row table with declared radius; vertices
/// without a table row fall back to `fallback` (or the zero row when absent).
/// Throws SupportOutsideBall if a table row reaches beyond the radius.
Operator custom_operator(const Graph& g, const RowTable& rows, std::size_t radius,
                         std::optional<Operator> fallback = std::nullopt, ScalarMode mode = ScalarMode::rational);

/// Exact A f(v). Only f on the row support is consulted.
Scalar apply(const Operator& op, const FunctionOnV& f, const VertexKey& v);

struct RowSupport {
    /// Positions (0-based) whose vertex lies in ball(v_j, radius).
    std::vector<std::size_t> positions;
    /// Support vertices of the row that fall outside the window.
    std::vector<VertexKey> outside;

    bool leaves_window() const { return !outside.empty(); }
};

/// N(j) for the 0-based position j, relative to the first `window` entries of
/// the enumeration (all of it by default). The ball radius is the row radius,
/// raised to `min_radius` when that is larger.
RowSupport row_support_indices(const Operator& op, const Enumeration& e, std::size_t j,
                               std::optional<std::size_t> window = std::nullopt, std::size_t min_radius = 0);

} // namespace graph_sections
