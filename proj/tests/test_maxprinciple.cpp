#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "graph_sections/errors.hpp"
#include "graph_sections/maxprinciple.hpp"
#include "graph_sections/sections.hpp"
#include "oracles.hpp"

using namespace graph_sections;

namespace {

const VertexKey tree_root = VertexKey(VertexKey::Coords{});

std::vector<Operator> principle_operators(const Graph& g, const Enumeration& e, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    Potential one;
    one.background = 1;
    Potential sparse;
    std::bernoulli_distribution coin(0.15);
    for (const auto& v : e.order)
        if (coin(rng))
            sparse.table.set(v, Scalar::fraction(std::uniform_int_distribution<long>(1, 4)(rng), 3));
    return {laplacian(g), laplacian_plus_lambda(g, one), laplacian_plus_lambda(g, sparse)};
}

} // namespace

TEST_CASE("structural certificates")
{
    auto line = Graph::zline();
    for (long x = -6; x <= 6; ++x) {
        auto c = check_structural(laplacian(line), x);
        CHECK(c.status == PrincipleStatus::structural_equality);
        CHECK(c.radius_used == 1);
    }
    Potential lam;
    lam.table.set(0, 1);
    CHECK(check_structural(laplacian_plus_lambda(line, lam), 0).status == PrincipleStatus::structural_strict);
    CHECK(check_structural(laplacian_plus_lambda(line, lam), 1).status == PrincipleStatus::structural_equality);
    CHECK(check_structural(adjacency(line), 0).status == PrincipleStatus::unknown);
    CHECK(check_structural(adjacency(Graph::regular_tree(3)), tree_root).status == PrincipleStatus::unknown);

    // A larger principle radius leaves the Laplacian without full support.
    auto wide = laplacian(line).with_principle_radius(2);
    auto c = check_structural(wide, 0);
    CHECK(c.status == PrincipleStatus::unknown);
    CHECK(c.radius_used == 2);

    CHECK_THROWS_AS(check_structural(laplacian(line, ScalarMode::floating), 0), FloatModeUnsupported);
    CHECK(check_structural(laplacian(line, ScalarMode::gaussian), 0).status == PrincipleStatus::structural_equality);
    auto twisted = custom_operator(line, {{VertexKey(0), {{VertexKey(0), Scalar(2)}, {VertexKey(1), Scalar::gaussian(0, 1)}}}},
                                   1, std::nullopt, ScalarMode::gaussian);
    CHECK(check_structural(twisted, 0).status == PrincipleStatus::unknown);
}

TEST_CASE("the hand-built adjacency witness on the tree")
{
    auto op = adjacency(Graph::regular_tree(3));
    FunctionOnV f{{tree_root, Scalar(1)},
                  {VertexKey(VertexKey::Coords{0}), Scalar(1)},
                  {VertexKey(VertexKey::Coords{1}), Scalar::fraction(-1, 2)},
                  {VertexKey(VertexKey::Coords{2}), Scalar::fraction(-1, 2)}};
    CHECK(apply(op, f, tree_root).is_zero());
    CHECK(is_violation(op, tree_root, 1, f));
    CHECK(oracle::recheck_witness(op, tree_root, ball(op.graph(), tree_root, 1), f));
}

TEST_CASE("falsifier")
{
    auto tree_adj = adjacency(Graph::regular_tree(3));
    auto witness = falsify(tree_adj, tree_root, 1000, 42);
    REQUIRE(witness);
    CHECK(oracle::recheck_witness(tree_adj, tree_root, ball(tree_adj.graph(), tree_root, 1), *witness));
    CHECK(falsify(tree_adj, tree_root, 1000, 42) == witness);

    CHECK_FALSE(falsify(laplacian(Graph::zline()), 0, 10000, 42));

    auto lonely = custom_operator(Graph::zline(), {{VertexKey(0), {{VertexKey(0), Scalar(1)}}}}, 1);
    CHECK_THROWS_AS(falsify(lonely, 0, 10, 1), NoOffDiagonal);
}

TEST_CASE("adjacency witnesses on every family are valid")
{
    for (const auto& fam : fixtures::undirected_families()) {
        auto op = adjacency(fam.graph);
        auto e = enumerate(fam.graph, {fam.root}, 10);
        for (const auto& v : e.order) {
            auto w = falsify(op, v, 200, 7);
            REQUIRE_MESSAGE(w, fam.name << " at " << v);
            CHECK(oracle::recheck_witness(op, v, ball(fam.graph, v, 1), *w));
        }
    }
}

TEST_CASE("structural certificates are never falsified")
{
    for (const auto& fam : fixtures::undirected_families()) {
        auto e = enumerate(fam.graph, {fam.root}, 50);
        for (const auto& op : principle_operators(fam.graph, e, 1)) {
            for (const auto& v : e.order) {
                auto c = check_structural(op, v);
                REQUIRE(c.status != PrincipleStatus::unknown);
                CHECK_FALSE_MESSAGE(falsify(op, v, 1000, 2024), fam.name << " " << op.name() << " at " << v);
            }
        }
    }
}

TEST_CASE("propagation certificates")
{
    auto line = Graph::zline();
    auto e = enumerate(line, {0}, 3);
    auto cert = propagation_certificate(laplacian(line), e, 3);
    CHECK(cert.certified);
    CHECK_FALSE(cert.window_only);
    REQUIRE(cert.traces.size() == 3);
    CHECK(cert.traces[1]->path == std::vector<std::size_t>{1});
    CHECK(cert.traces[1]->exit == VertexKey(-2));
    CHECK(cert.traces[2]->exit == VertexKey(2));
    CHECK(cert.traces[0]->path.size() == 2);

    auto tri_graph = fixtures::triangle();
    auto tri = propagation_certificate(laplacian(tri_graph), enumerate(tri_graph, {VertexKey::label("a")}, 3), 3);
    CHECK_FALSE(tri.certified);
    CHECK(tri.stuck == std::vector<std::size_t>{0, 1, 2});
    CHECK(tri.window_only);

    Potential one;
    one.background = 1;
    for (const auto& fam : fixtures::undirected_families()) {
        auto w = enumerate(fam.graph, {fam.root}, 9);
        auto strict = propagation_certificate(laplacian_plus_lambda(fam.graph, one), w, 9);
        CHECK(strict.certified);
        for (const auto& t : strict.traces)
            CHECK(t->path.size() == 1);
    }
    auto strict_tri = propagation_certificate(laplacian_plus_lambda(tri_graph, one),
                                              enumerate(tri_graph, {VertexKey::label("a")}, 3), 3);
    CHECK(strict_tri.certified);
    for (const auto& t : strict_tri.traces)
        CHECK(t->strict_terminal);

    auto tree = Graph::regular_tree(3);
    CHECK_THROWS_AS(propagation_certificate(adjacency(tree), enumerate(tree, {tree_root}, 5), 5), PremiseFailed);
    CHECK_THROWS_AS(propagation_certificate(laplacian(line, ScalarMode::floating), e, 3), FloatModeUnsupported);
}

TEST_CASE("propagation traces follow the support digraph")
{
    for (const auto& fam : fixtures::undirected_families()) {
        auto e = enumerate(fam.graph, {fam.root}, 20);
        auto op = laplacian(fam.graph);
        auto cert = propagation_certificate(op, e, 20);
        REQUIRE(cert.certified);
        for (std::size_t j = 0; j < 20; ++j) {
            const auto& path = cert.traces[j]->path;
            CHECK(path.front() == j);
            for (std::size_t s = 1; s < path.size(); ++s) {
                auto support = row_support_indices(op, e, path[s - 1], 20);
                CHECK(std::binary_search(support.positions.begin(), support.positions.end(), path[s]));
            }
            CHECK(row_support_indices(op, e, path.back(), 20).leaves_window());
        }
    }
}

TEST_CASE("certified propagation implies injective sections for k <= 25")
{
    for (const auto& fam : fixtures::undirected_families()) {
        auto e = enumerate(fam.graph, {fam.root}, 25);
        for (const auto& op : principle_operators(fam.graph, e, 3)) {
            for (std::size_t k = 1; k <= 25; ++k) {
                auto cert = propagation_certificate(op, e, k);
                if (cert.certified)
                    CHECK_MESSAGE(is_injective(build_section(op, e, k)), fam.name << " " << op.name() << " k=" << k);
            }
        }
    }
}
