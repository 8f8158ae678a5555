#pragma once

#include <string>
#include <utility>
#include <vector>

#include "graph_sections/graph.hpp"
#include "graph_sections/operator.hpp"

namespace fixtures {

using graph_sections::Graph;
using graph_sections::VertexKey;

struct Family {
    std::string name;
    Graph graph;
    VertexKey root;
};

/// The undirected infinite built-ins with their canonical roots.
inline std::vector<Family> undirected_families()
{
    return {{"zline", Graph::zline(), VertexKey(0)},
            {"zsquare", Graph::zsquare(), VertexKey{0, 0}},
            {"tree(3)", Graph::regular_tree(3), VertexKey(VertexKey::Coords{})}};
}

inline Graph triangle()
{
    using K = VertexKey;
    return Graph::explicit_finite({{K::label("a"), K::label("b")}, {K::label("b"), K::label("c")},
                                   {K::label("a"), K::label("c")}},
                                  true);
}

/// Triangle {a, b, c} (unscoped) beside a directed ray scoped as "ray".
inline Graph triangle_and_ray()
{
    return Graph::disjoint_union({{"", triangle()}, {"ray", Graph::directed_ray()}});
}

inline VertexKey key(const std::string& text) { return VertexKey::parse(text); }

} // namespace fixtures
