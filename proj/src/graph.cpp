#include "graph_sections/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "graph_sections/errors.hpp"

namespace graph_sections {

bool GraphFamily::undirected_at(const VertexKey&) const { return undirected(); }

namespace {

void sort_unique(std::vector<VertexKey>& keys)
{
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

[[noreturn]] void invalid(const VertexKey& v, const std::string& family)
{
    throw InvalidKey("\"" + v.to_string() + "\" is not a vertex of " + family);
}

bool is_tuple_of(const VertexKey& v, std::size_t n)
{
    return v.scope().empty() && !v.is_label() && v.coords().size() == n;
}

class ZLine final : public GraphFamily {
public:
    Neighbors neighbors(const VertexKey& v) const override
    {
        if (!contains(v))
            invalid(v, describe());
        auto x = v.coords()[0];
        std::vector<VertexKey> adj{VertexKey(x - 1), VertexKey(x + 1)};
        return {adj, adj};
    }
    bool contains(const VertexKey& v) const override { return is_tuple_of(v, 1); }
    bool undirected() const override { return true; }
    bool simplicial() const override { return true; }
    bool finite() const override { return false; }
    std::string describe() const override { return "zline"; }
    std::vector<VertexKey> canonical_roots() const override { return {VertexKey(0)}; }
};

class ZSquare final : public GraphFamily {
public:
    Neighbors neighbors(const VertexKey& v) const override
    {
        if (!contains(v))
            invalid(v, describe());
        auto x = v.coords()[0];
        auto y = v.coords()[1];
        std::vector<VertexKey> adj{{x - 1, y}, {x, y - 1}, {x, y + 1}, {x + 1, y}};
        return {adj, adj};
    }
    bool contains(const VertexKey& v) const override { return is_tuple_of(v, 2); }
    bool undirected() const override { return true; }
    bool simplicial() const override { return true; }
    bool finite() const override { return false; }
    std::string describe() const override { return "zsquare"; }
    std::vector<VertexKey> canonical_roots() const override { return {VertexKey{0, 0}}; }
};

// Vertices are root paths: the root has children 0..d-1, every other vertex
// has children 0..d-2 besides its parent, so every degree is d.
class RegularTree final : public GraphFamily {
public:
    explicit RegularTree(int d) : d_(d)
    {
        if (d < 2)
            throw std::invalid_argument("regular tree degree must be at least 2");
    }

    Neighbors neighbors(const VertexKey& v) const override
    {
        if (!contains(v))
            invalid(v, describe());
        const auto& path = v.coords();
        std::vector<VertexKey> adj;
        if (!path.empty())
            adj.emplace_back(VertexKey::Coords(path.begin(), path.end() - 1));
        int children = path.empty() ? d_ : d_ - 1;
        for (int i = 0; i < children; ++i) {
            auto child = path;
            child.push_back(i);
            adj.emplace_back(std::move(child));
        }
        return {adj, adj};
    }

    bool contains(const VertexKey& v) const override
    {
        if (!v.scope().empty() || v.is_label())
            return false;
        const auto& path = v.coords();
        for (std::size_t i = 0; i < path.size(); ++i) {
            int limit = i == 0 ? d_ : d_ - 1;
            if (path[i] < 0 || path[i] >= limit)
                return false;
        }
        return true;
    }

    bool undirected() const override { return true; }
    bool simplicial() const override { return true; }
    bool finite() const override { return false; }
    std::string describe() const override { return "tree(" + std::to_string(d_) + ")"; }
    std::vector<VertexKey> canonical_roots() const override { return {VertexKey(VertexKey::Coords{})}; }

private:
    int d_;
};

class DirectedRay final : public GraphFamily {
public:
    Neighbors neighbors(const VertexKey& v) const override
    {
        if (!contains(v))
            invalid(v, describe());
        auto x = v.coords()[0];
        Neighbors n;
        n.out.emplace_back(x + 1);
        if (x > 0)
            n.in.emplace_back(x - 1);
        return n;
    }
    bool contains(const VertexKey& v) const override { return is_tuple_of(v, 1) && v.coords()[0] >= 0; }
    bool undirected() const override { return false; }
    bool simplicial() const override { return true; }
    bool finite() const override { return false; }
    std::string describe() const override { return "ray"; }
    std::vector<VertexKey> canonical_roots() const override { return {VertexKey(0)}; }
};

class ExplicitFinite final : public GraphFamily {
public:
    ExplicitFinite(const std::vector<std::pair<VertexKey, VertexKey>>& edges, bool undirected,
                   const std::vector<VertexKey>& isolated)
        : undirected_(undirected)
    {
        for (const auto& v : isolated)
            adjacency_[v];
        for (const auto& [a, b] : edges) {
            if (!a.scope().empty() || !b.scope().empty())
                throw std::invalid_argument("explicit graph keys must not carry a scope");
            adjacency_[a].out.push_back(b);
            adjacency_[b].in.push_back(a);
            if (undirected) {
                adjacency_[b].out.push_back(a);
                adjacency_[a].in.push_back(b);
            }
            if (a == b)
                simplicial_ = false;
        }
        for (auto& [v, n] : adjacency_) {
            sort_unique(n.out);
            sort_unique(n.in);
        }
    }

    Neighbors neighbors(const VertexKey& v) const override
    {
        auto it = adjacency_.find(v);
        if (it == adjacency_.end())
            invalid(v, describe());
        return it->second;
    }
    bool contains(const VertexKey& v) const override { return adjacency_.count(v) != 0; }
    bool undirected() const override { return undirected_; }
    bool simplicial() const override { return simplicial_; }
    bool finite() const override { return true; }
    std::string describe() const override
    {
        return "explicit(" + std::to_string(adjacency_.size()) + " vertices" + (undirected_ ? "" : ", directed") + ")";
    }
    std::vector<VertexKey> canonical_roots() const override
    {
        if (adjacency_.empty())
            return {};
        return {adjacency_.begin()->first};
    }

private:
    std::map<VertexKey, Neighbors> adjacency_;
    bool undirected_;
    bool simplicial_ = true;
};

class DisjointUnion final : public GraphFamily {
public:
    explicit DisjointUnion(std::vector<std::pair<std::string, Graph>> components) : components_(std::move(components))
    {
        if (components_.empty())
            throw std::invalid_argument("disjoint union needs at least one component");
        std::set<std::string> names;
        for (const auto& [name, g] : components_) {
            if (name.find_first_of(":/") != std::string::npos)
                throw std::invalid_argument("component name \"" + name + "\" must not contain ':' or '/'");
            if (!names.insert(name).second)
                throw std::invalid_argument("duplicate component name \"" + name + "\"");
        }
    }

    Neighbors neighbors(const VertexKey& v) const override
    {
        auto [c, inner] = locate(v);
        if (!c)
            invalid(v, describe());
        Neighbors n = c->second.neighbors(inner);
        for (auto& w : n.out)
            w = w.scoped(c->first);
        for (auto& w : n.in)
            w = w.scoped(c->first);
        return n;
    }

    bool contains(const VertexKey& v) const override { return locate(v).first != nullptr; }

    bool undirected() const override
    {
        return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.second.undirected(); });
    }
    bool simplicial() const override
    {
        return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.second.simplicial(); });
    }
    bool undirected_at(const VertexKey& v) const override
    {
        auto [c, inner] = locate(v);
        if (!c)
            invalid(v, describe());
        return c->second.undirected_at(inner);
    }
    bool finite() const override
    {
        return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.second.finite(); });
    }
    std::string describe() const override
    {
        std::string out = "union(";
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (i)
                out += ", ";
            if (!components_[i].first.empty())
                out += components_[i].first + "=";
            out += components_[i].second.describe();
        }
        return out + ")";
    }
    std::vector<VertexKey> canonical_roots() const override
    {
        std::vector<VertexKey> roots;
        for (const auto& [name, g] : components_)
            for (const auto& r : g.canonical_roots())
                roots.push_back(r.scoped(name));
        return roots;
    }

private:
    using Component = std::pair<std::string, Graph>;

    std::pair<const Component*, VertexKey> locate(const VertexKey& v) const
    {
        const std::string lead = v.leading_scope();
        const Component* unnamed = nullptr;
        for (const auto& c : components_) {
            if (!c.first.empty() && c.first == lead) {
                VertexKey inner = v.unscoped();
                if (c.second.contains(inner))
                    return {&c, inner};
                return {nullptr, v};
            }
            if (c.first.empty())
                unnamed = &c;
        }
        if (unnamed && unnamed->second.contains(v))
            return {unnamed, v};
        return {nullptr, v};
    }

    std::vector<Component> components_;
};

class CustomFamily final : public GraphFamily {
public:
    CustomFamily(std::string description, std::function<std::optional<Neighbors>(const VertexKey&)> fn,
                 bool undirected, bool simplicial, std::vector<VertexKey> roots)
        : description_(std::move(description)),
          fn_(std::move(fn)),
          undirected_(undirected),
          simplicial_(simplicial),
          roots_(std::move(roots))
    {
    }

    Neighbors neighbors(const VertexKey& v) const override
    {
        auto n = fn_(v);
        if (!n)
            invalid(v, describe());
        sort_unique(n->out);
        sort_unique(n->in);
        return *n;
    }
    bool contains(const VertexKey& v) const override { return fn_(v).has_value(); }
    bool undirected() const override { return undirected_; }
    bool simplicial() const override { return simplicial_; }
    bool finite() const override { return false; }
    std::string describe() const override { return description_; }
    std::vector<VertexKey> canonical_roots() const override { return roots_; }

private:
    std::string description_;
    std::function<std::optional<Neighbors>(const VertexKey&)> fn_;
    bool undirected_;
    bool simplicial_;
    std::vector<VertexKey> roots_;
};

} // namespace

Graph::Graph(std::shared_ptr<const GraphFamily> family) : family_(std::move(family))
{
    if (!family_)
        throw std::invalid_argument("null graph family");
}

Graph Graph::zline() { return Graph(std::make_shared<ZLine>()); }

Graph Graph::zsquare() { return Graph(std::make_shared<ZSquare>()); }

Graph Graph::regular_tree(int degree) { return Graph(std::make_shared<RegularTree>(degree)); }

Graph Graph::directed_ray() { return Graph(std::make_shared<DirectedRay>()); }

Graph Graph::explicit_finite(const std::vector<std::pair<VertexKey, VertexKey>>& edges, bool undirected,
                             const std::vector<VertexKey>& isolated)
{
    return Graph(std::make_shared<ExplicitFinite>(edges, undirected, isolated));
}

Graph Graph::disjoint_union(std::vector<std::pair<std::string, Graph>> components)
{
    return Graph(std::make_shared<DisjointUnion>(std::move(components)));
}

Graph Graph::custom(std::string description, std::function<std::optional<Neighbors>(const VertexKey&)> neighbors,
                    bool undirected, bool simplicial, std::vector<VertexKey> roots)
{
    return Graph(std::make_shared<CustomFamily>(std::move(description), std::move(neighbors), undirected, simplicial,
                                                std::move(roots)));
}

std::vector<VertexKey> Graph::symmetric_neighbors(const VertexKey& v) const
{
    auto n = neighbors(v);
    std::vector<VertexKey> all = std::move(n.out);
    all.insert(all.end(), n.in.begin(), n.in.end());
    sort_unique(all);
    return all;
}

std::size_t degree(const Graph& g, const VertexKey& v)
{
    if (!g.undirected_at(v))
        throw DirectedGraph("degree of \"" + v.to_string() + "\" requested on a directed graph " + g.describe());
    return g.neighbors(v).out.size();
}

std::set<VertexKey> ball(const Graph& g, const VertexKey& v, std::size_t n)
{
    if (!g.contains(v))
        throw InvalidKey("\"" + v.to_string() + "\" is not a vertex of " + g.describe());
    std::set<VertexKey> result{v};
    // Forward and backward directed distances are explored separately.
    for (bool forward : {true, false}) {
        std::set<VertexKey> seen{v};
        std::vector<VertexKey> frontier{v};
        for (std::size_t step = 0; step < n && !frontier.empty(); ++step) {
            std::vector<VertexKey> next;
            for (const auto& u : frontier) {
                auto nb = g.neighbors(u);
                for (const auto& w : forward ? nb.out : nb.in)
                    if (seen.insert(w).second)
                        next.push_back(w);
            }
            frontier = std::move(next);
        }
        result.insert(seen.begin(), seen.end());
    }
    return result;
}

std::optional<std::size_t> Enumeration::position(const VertexKey& v) const
{
    auto it = index.find(v);
    if (it == index.end())
        return std::nullopt;
    return it->second;
}

Enumeration enumerate(const Graph& g, const std::vector<VertexKey>& roots, std::size_t k)
{
    if (roots.empty())
        throw std::invalid_argument("enumeration needs at least one root");
    if (k == 0)
        throw std::invalid_argument("enumeration length must be positive");

    Enumeration e;
    e.roots = roots;
    auto push = [&](const VertexKey& v, std::size_t layer) {
        e.index.emplace(v, e.order.size());
        e.order.push_back(v);
        e.layer.push_back(layer);
    };

    for (const auto& r : roots) {
        if (!g.contains(r))
            throw InvalidKey("root \"" + r.to_string() + "\" is not a vertex of " + g.describe());
        if (e.index.count(r))
            throw std::invalid_argument("duplicate root \"" + r.to_string() + "\"");
        push(r, 0);
    }

    std::vector<VertexKey> frontier(roots);
    std::size_t layer = 0;
    while (e.order.size() < k && !frontier.empty()) {
        ++layer;
        std::set<VertexKey> next;
        for (const auto& u : frontier)
            for (const auto& w : g.symmetric_neighbors(u))
                if (!e.index.count(w))
                    next.insert(w);
        frontier.assign(next.begin(), next.end());
        for (const auto& w : frontier)
            push(w, layer);
    }

    if (e.order.size() > k) {
        for (std::size_t i = k; i < e.order.size(); ++i)
            e.index.erase(e.order[i]);
        e.order.resize(k);
        e.layer.resize(k);
    }
    e.exhausted = e.order.size() < k;
    return e;
}

bool window_connected(const Graph& g, const Enumeration& e)
{
    if (e.order.empty())
        return true;
    std::set<VertexKey> seen{e.order.front()};
    std::deque<VertexKey> queue{e.order.front()};
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (const auto& w : g.symmetric_neighbors(u))
            if (e.index.count(w) && seen.insert(w).second)
                queue.push_back(w);
    }
    return seen.size() == e.order.size();
}

} // namespace graph_sections
