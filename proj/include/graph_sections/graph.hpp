#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "graph_sections/vertex_key.hpp"

namespace graph_sections {

struct Neighbors {
    std::vector<VertexKey> out;
    std::vector<VertexKey> in;
};

/// Generator interface behind Graph. Implementations must be pure: the same
/// key always yields the same (sorted, duplicate-free) neighbor lists.
class GraphFamily {
public:
    virtual ~GraphFamily() = default;

    /// Throws InvalidKey for keys that are not vertices.
    virtual Neighbors neighbors(const VertexKey& v) const = 0;
    virtual bool contains(const VertexKey& v) const = 0;
    virtual bool undirected() const = 0;
    virtual bool simplicial() const = 0;
    /// Undirectedness of the connected piece containing v. Differs from
    /// undirected() only for disjoint unions mixing directed components.
    virtual bool undirected_at(const VertexKey& v) const;
    virtual bool finite() const = 0;
    virtual std::string describe() const = 0;
    virtual std::vector<VertexKey> canonical_roots() const = 0;
};

/// Locally finite graph, finite or countably infinite, with lazily generated
/// adjacency. Cheap to copy; copies share the generator.
///
/// Connectivity of the infinite built-in families is part of their contract
/// (Z, Z^2, regular trees and the directed ray are connected); it is never
/// computed.
class Graph {
public:
    explicit Graph(std::shared_ptr<const GraphFamily> family);

    static Graph zline();
    static Graph zsquare();
    static Graph regular_tree(int degree);
    /// Vertices 0, 1, 2, ... with edges i -> i+1.
    static Graph directed_ray();
    /// Finite graph from an edge list; with `undirected` every edge is
    /// symmetrized. `isolated` adds vertices without edges.
    static Graph explicit_finite(const std::vector<std::pair<VertexKey, VertexKey>>& edges, bool undirected,
                                 const std::vector<VertexKey>& isolated = {});
    /// Components are addressed by scoping keys with their name ("" is allowed
    /// for at most one component and leaves its keys unscoped).
    static Graph disjoint_union(std::vector<std::pair<std::string, Graph>> components);
    /// User generator; `neighbors` must be pure and return sorted lists.
    static Graph custom(std::string description, std::function<std::optional<Neighbors>(const VertexKey&)> neighbors,
                        bool undirected, bool simplicial, std::vector<VertexKey> roots);

    Neighbors neighbors(const VertexKey& v) const { return family_->neighbors(v); }
    bool contains(const VertexKey& v) const { return family_->contains(v); }
    bool undirected() const { return family_->undirected(); }
    bool simplicial() const { return family_->simplicial(); }
    bool undirected_at(const VertexKey& v) const { return family_->undirected_at(v); }
    bool finite() const { return family_->finite(); }
    std::string describe() const { return family_->describe(); }
    std::vector<VertexKey> canonical_roots() const { return family_->canonical_roots(); }

    /// Sorted union of out- and in-neighbors.
    std::vector<VertexKey> symmetric_neighbors(const VertexKey& v) const;

private:
    std::shared_ptr<const GraphFamily> family_;
};

/// Number of adjacent vertices. Throws DirectedGraph unless the component of
/// v is undirected.
std::size_t degree(const Graph& g, const VertexKey& v);

/// Two-sided ball: v, the endpoints of directed paths of length <= n leaving
/// v, and the starting points of directed paths of length <= n entering v.
std::set<VertexKey> ball(const Graph& g, const VertexKey& v, std::size_t n);

/// BFS-ordered prefix of the vertex set, realizing K^V as sequences.
struct Enumeration {
    std::vector<VertexKey> roots;
    std::vector<VertexKey> order;
    /// BFS layer of each entry (roots are layer 0).
    std::vector<std::size_t> layer;
    std::map<VertexKey, std::size_t> index;
    /// Fewer vertices were reachable than requested.
    bool exhausted = false;

    std::size_t size() const { return order.size(); }
    const VertexKey& at(std::size_t position) const { return order.at(position); }
    std::optional<std::size_t> position(const VertexKey& v) const;
};

/// First k vertices in BFS order over symmetrized adjacency. Layer 0 is the
/// roots in the given order; later layers are sorted by key. If fewer than k
/// vertices are reachable, the full order is returned with `exhausted` set.
Enumeration enumerate(const Graph& g, const std::vector<VertexKey>& roots, std::size_t k);

/// Whether the enumerated window is a single component of the symmetrized
/// adjacency restricted to the window.
bool window_connected(const Graph& g, const Enumeration& e);

} // namespace graph_sections
