#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "graph_sections/errors.hpp"
#include "graph_sections/operator.hpp"
#include "oracles.hpp"

using namespace graph_sections;
using fixtures::key;

namespace {

using Coeffs = std::vector<std::pair<VertexKey, Scalar>>;

Coeffs coeffs(const StencilRow& r) { return r.coeffs; }

Potential sparse_lambda(std::mt19937_64& rng, const Enumeration& e)
{
    Potential lam;
    std::bernoulli_distribution coin(0.3);
    for (const auto& v : e.order)
        if (coin(rng))
            lam.table.set(v, Scalar::fraction(std::uniform_int_distribution<long>(1, 5)(rng),
                                              std::uniform_int_distribution<long>(1, 4)(rng)));
    return lam;
}

std::vector<Operator> builtin_operators(const Graph& g, std::mt19937_64& rng, const Enumeration& e)
{
    Potential one;
    one.background = 1;
    return {laplacian(g), laplacian_plus_lambda(g, one), laplacian_plus_lambda(g, sparse_lambda(rng, e)),
            adjacency(g)};
}

FunctionOnV random_function(std::mt19937_64& rng, const std::vector<VertexKey>& domain)
{
    FunctionOnV f;
    for (const auto& v : domain)
        f.set(v, oracle::random_rational(rng, 9, 9));
    return f;
}

} // namespace

TEST_CASE("laplacian rows")
{
    CHECK(coeffs(laplacian_row(Graph::zline(), 0)) ==
          Coeffs{{-1, Scalar::fraction(-1, 2)}, {0, 1}, {1, Scalar::fraction(-1, 2)}});
    CHECK(laplacian_row(Graph::zline(), 0).radius == 1);

    auto root = laplacian_row(Graph::regular_tree(3), VertexKey(VertexKey::Coords{}));
    CHECK(root.diagonal() == Scalar(1));
    CHECK(root.coeffs.size() == 4);
    for (const auto& [w, c] : root.coeffs)
        if (w != root.vertex)
            CHECK(c == Scalar::fraction(-1, 3));

    auto lonely = Graph::explicit_finite({{VertexKey::label("a"), VertexKey::label("b")}}, true,
                                         {VertexKey::label("z")});
    CHECK_THROWS_AS(laplacian_row(lonely, VertexKey::label("z")), ZeroDegree);
    CHECK_THROWS_AS(laplacian_row(Graph::directed_ray(), 2), DirectedGraph);
    CHECK_THROWS_AS(laplacian(lonely).row(VertexKey::label("z")), ZeroDegree);
}

TEST_CASE("laplacian plus lambda rows")
{
    auto g = Graph::zline();
    for (long x = -5; x <= 5; ++x)
        CHECK(coeffs(laplacian_plus_lambda_row(g, Potential{}, x)) == coeffs(laplacian_row(g, x)));

    Potential lam;
    lam.table.set(0, 1);
    CHECK(coeffs(laplacian_plus_lambda_row(g, lam, 0)) ==
          Coeffs{{-1, Scalar::fraction(-1, 2)}, {0, 2}, {1, Scalar::fraction(-1, 2)}});
    CHECK(coeffs(laplacian_plus_lambda_row(g, lam, 1)) == coeffs(laplacian_row(g, 1)));

    Potential negative;
    negative.table.set(0, -1);
    CHECK_THROWS_AS(laplacian_plus_lambda_row(g, negative, 0), NegativeLambda);
    Potential negative_background;
    negative_background.background = Rational(-1, 3);
    CHECK_THROWS_AS(laplacian_plus_lambda(g, negative_background).row(4), NegativeLambda);
}

TEST_CASE("adjacency rows")
{
    CHECK(coeffs(adjacency_row(Graph::zline(), 0)) == Coeffs{{-1, 1}, {1, 1}});
    auto root = adjacency_row(Graph::regular_tree(3), VertexKey(VertexKey::Coords{}));
    CHECK(root.coeffs.size() == 3);
    CHECK(root.diagonal().is_zero());
    for (const auto& [w, c] : root.coeffs)
        CHECK(c == Scalar(1));
    CHECK(coeffs(adjacency_row(Graph::directed_ray(), 5)) == Coeffs{{6, 1}});
    CHECK_THROWS_AS(adjacency_row(Graph::directed_ray(), -1), InvalidKey);
}

TEST_CASE("rows never store zeros")
{
    auto row = make_row(0, 1, {{-1, 0}, {0, 3}, {1, Scalar::fraction(0, 5)}});
    CHECK(row.coeffs == Coeffs{{0, 3}});
    CHECK(row.coefficient(1).is_zero());
}

TEST_CASE("custom operators")
{
    auto g = Graph::zline();
    auto plain = custom_operator(g, {}, 1, laplacian(g));
    for (long x = -4; x <= 4; ++x)
        CHECK(coeffs(plain.row(x)) == coeffs(laplacian(g).row(x)));

    CHECK_THROWS_AS(custom_operator(g, {{VertexKey(0), {{VertexKey(7), Scalar(1)}}}}, 1), SupportOutsideBall);
    try {
        custom_operator(g, {{VertexKey(0), {{VertexKey(7), Scalar(1)}}}}, 1);
    } catch (const SupportOutsideBall& e) {
        std::string msg = e.what();
        CHECK(msg.find("\"0\"") != std::string::npos);
        CHECK(msg.find("\"7\"") != std::string::npos);
    }

    auto tweaked = custom_operator(g, {{VertexKey(0), {{VertexKey(0), Scalar(5)}, {VertexKey(1), Scalar(-1)}}}}, 1,
                                   laplacian(g));
    CHECK(tweaked.row(0).diagonal() == Scalar(5));
    for (long x : {-3, -1, 1, 2})
        CHECK(coeffs(tweaked.row(x)) == coeffs(laplacian(g).row(x)));

    auto gaussian_rows = custom_operator(g, {{VertexKey(0), {{VertexKey(0), Scalar::gaussian(0, 2)}}}}, 0,
                                         std::nullopt, ScalarMode::gaussian);
    CHECK(gaussian_rows.row(0).diagonal() == Scalar::gaussian(0, 2));
    CHECK(gaussian_rows.row(3).coeffs.empty());
}

TEST_CASE("apply")
{
    auto op = laplacian(Graph::zline());
    FunctionOnV delta{{VertexKey(0), Scalar(1)}};
    CHECK(apply(op, delta, 0) == Scalar(1));
    CHECK(apply(op, delta, 1) == Scalar::fraction(-1, 2));
    CHECK(apply(op, delta, 5).is_zero());
    FunctionOnV far{{VertexKey(10), Scalar(3)}};
    CHECK(apply(op, far, 0).is_zero());
    CHECK(apply(op, FunctionOnV{}, 0).is_zero());
}

TEST_CASE("row_support_indices on the integer line")
{
    auto op = laplacian(Graph::zline());
    auto e = enumerate(Graph::zline(), {0}, 5);

    auto first = row_support_indices(op, e, 0);
    CHECK(first.positions == std::vector<std::size_t>{0, 1, 2});
    CHECK_FALSE(first.leaves_window());

    auto narrow = row_support_indices(op, e, 1, 3);
    CHECK(narrow.positions == std::vector<std::size_t>{0, 1});
    CHECK(narrow.outside == std::vector<VertexKey>{-2});

    auto wide = row_support_indices(op, e, 1, 5);
    CHECK(wide.positions == std::vector<std::size_t>{0, 1, 3});
    CHECK_FALSE(wide.leaves_window());

    CHECK_THROWS_AS(row_support_indices(op, e, 3, 3), std::out_of_range);
}

TEST_CASE("finite hopping range: apply only sees the ball")
{
    std::mt19937_64 rng(99);
    for (const auto& fam : fixtures::undirected_families()) {
        auto e = enumerate(fam.graph, {fam.root}, 60);
        auto ops = builtin_operators(fam.graph, rng, e);
        for (int t = 0; t < 100; ++t) {
            const auto& op = ops[static_cast<std::size_t>(t) % ops.size()];
            const auto& v = e.at(std::uniform_int_distribution<std::size_t>(0, 30)(rng));
            auto row = op.row(v);
            auto near = ball(fam.graph, v, row.radius);
            auto wide = ball(fam.graph, v, row.radius + 2);
            std::vector<VertexKey> domain(wide.begin(), wide.end());
            auto f = random_function(rng, domain);
            auto g = random_function(rng, domain);
            for (const auto& w : near)
                g.set(w, f(w));
            CHECK_MESSAGE(apply(op, f, v) == apply(op, g, v), fam.name << " " << op.name() << " at " << v);
        }
    }
}

TEST_CASE("stencil support lies in the declared ball")
{
    std::mt19937_64 rng(5);
    for (const auto& fam : fixtures::undirected_families()) {
        auto e = enumerate(fam.graph, {fam.root}, 40);
        for (const auto& op : builtin_operators(fam.graph, rng, e)) {
            for (const auto& v : e.order) {
                auto row = op.row(v);
                auto b = ball(fam.graph, v, row.radius);
                for (const auto& [w, c] : row.coeffs) {
                    CHECK(b.count(w) == 1);
                    CHECK_FALSE(c.is_zero());
                }
                if (op.uniform_radius())
                    CHECK(row.radius <= *op.uniform_radius());
            }
        }
    }
}

TEST_CASE("laplacian rows sum to zero on the first 200 vertices")
{
    for (const auto& fam : fixtures::undirected_families()) {
        auto e = enumerate(fam.graph, {fam.root}, 200);
        REQUIRE(e.size() == 200);
        auto op = laplacian(fam.graph);
        for (const auto& v : e.order) {
            Scalar sum;
            for (const auto& [w, c] : op.row(v).coeffs)
                sum += c;
            CHECK_MESSAGE(sum.is_zero(), fam.name << " at " << v);
        }
    }
}

TEST_CASE("apply is linear")
{
    std::mt19937_64 rng(17);
    for (const auto& fam : fixtures::undirected_families()) {
        auto e = enumerate(fam.graph, {fam.root}, 40);
        auto ops = builtin_operators(fam.graph, rng, e);
        for (int t = 0; t < 50; ++t) {
            const auto& op = ops[static_cast<std::size_t>(t) % ops.size()];
            const auto& v = e.at(std::uniform_int_distribution<std::size_t>(0, 15)(rng));
            auto f = random_function(rng, e.order);
            auto g = random_function(rng, e.order);
            auto alpha = oracle::random_rational(rng, 9, 9);
            auto beta = oracle::random_rational(rng, 9, 9);
            auto combo = f.scaled(alpha) + g.scaled(beta);
            CHECK(apply(op, combo, v) == alpha * apply(op, f, v) + beta * apply(op, g, v));
        }
    }
}

TEST_CASE("operators convert their rows to the requested scalar mode")
{
    auto op = laplacian(Graph::zline(), ScalarMode::gaussian);
    for (const auto& [w, c] : op.row(0).coeffs)
        CHECK(c.mode() == ScalarMode::gaussian);
    auto fl = laplacian(Graph::zline(), ScalarMode::floating);
    CHECK(fl.row(0).diagonal().mode() == ScalarMode::floating);
    CHECK(op.with_principle_radius(2).principle_radius() == 2);
}

TEST_CASE("functions on V drop zeros")
{
    FunctionOnV f{{VertexKey(1), Scalar(2)}, {VertexKey(2), Scalar(0)}};
    CHECK(f.support().size() == 1);
    f.add(1, -2);
    CHECK(f.empty());
    CHECK(f(key("7")).is_zero());
}
