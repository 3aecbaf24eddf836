#include <doctest.h>

#include <cmath>
#include <set>

#include "netmode/errors.hpp"
#include "netmode/generation.hpp"
#include "netmode/graph.hpp"

using namespace netmode;

namespace {

GeneratorConfig sf_config(std::int64_t n, double k, double gamma, std::uint64_t seed) {
    GeneratorConfig c;
    c.n = n;
    c.k = k;
    c.gamma_in = gamma;
    c.gamma_out = gamma;
    c.seed = seed;
    c.model = GraphModel::StaticScaleFree;
    return c;
}

GeneratorConfig er_config(std::int64_t n, double k, std::uint64_t seed) {
    GeneratorConfig c;
    c.n = n;
    c.k = k;
    c.seed = seed;
    c.model = GraphModel::UniformRandom;
    return c;
}

// Discrete power-law exponent estimate over degrees >= d_min
// (maximum-likelihood with the usual d_min - 1/2 offset).
double fit_exponent(const DirectedGraph& g, int d_min) {
    double log_sum = 0.0;
    std::int64_t count = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto d = static_cast<double>(g.in_neighbors(v).size());
        if (d < d_min) continue;
        log_sum += std::log(d / (d_min - 0.5));
        ++count;
    }
    REQUIRE(count > 100);
    return 1.0 + static_cast<double>(count) / log_sum;
}

}  // namespace

TEST_CASE("scale-free: exact edge count, no loops or duplicates") {
    const DirectedGraph g = scale_free_digraph(sf_config(1000, 10.0, 3.0, 7));
    CHECK(g.node_count() == 1000);
    CHECK(g.edge_count() == 5000);
    CHECK(average_degree(g) == doctest::Approx(10.0));
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& [u, v] : g.edges()) {
        CHECK(u != v);
        CHECK(seen.emplace(u, v).second);
    }
}

TEST_CASE("generators are deterministic per seed") {
    const std::string a = serialize_edge_list(scale_free_digraph(sf_config(400, 6.0, 3.0, 99)));
    const std::string b = serialize_edge_list(scale_free_digraph(sf_config(400, 6.0, 3.0, 99)));
    CHECK(a == b);
    const std::string c = serialize_edge_list(scale_free_digraph(sf_config(400, 6.0, 3.0, 100)));
    CHECK(a != c);

    const std::string d = serialize_edge_list(uniform_random_digraph(er_config(100, 4.0, 1)));
    const std::string e = serialize_edge_list(uniform_random_digraph(er_config(100, 4.0, 1)));
    CHECK(d == e);
}

TEST_CASE("uniform: exact counts and the saturated two-node case") {
    const DirectedGraph g = uniform_random_digraph(er_config(100, 4.0, 1));
    CHECK(g.edge_count() == 200);

    const DirectedGraph tiny = uniform_random_digraph(er_config(2, 2.0, 5));
    CHECK(tiny.edge_count() == 2);
    CHECK(tiny.has_edge(0, 1));
    CHECK(tiny.has_edge(1, 0));
}

TEST_CASE("ceil rounding of the edge target") {
    CHECK(sf_config(10, 4.1, 3.0, 0).edge_target() == 21);
    CHECK(sf_config(10, 4.0, 3.0, 0).edge_target() == 20);
    const DirectedGraph g = uniform_random_digraph(er_config(10, 4.1, 3));
    CHECK(g.edge_count() == 21);
    CHECK(std::abs(average_degree(g) - 4.1) < 2.0 / 10.0);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(uniform_random_digraph(er_config(1, 2.0, 0)), ConfigInvalid);
    CHECK_THROWS_AS(uniform_random_digraph(er_config(10, 0.0, 0)), ConfigInvalid);
    CHECK_THROWS_AS(scale_free_digraph(sf_config(10, 4.0, 2.0, 0)), ConfigInvalid);
    // More edges than non-loop slots.
    CHECK_THROWS_AS(uniform_random_digraph(er_config(3, 10.0, 0)), ConfigInvalid);
    // Model mismatch.
    CHECK_THROWS_AS(scale_free_digraph(er_config(10, 4.0, 0)), ConfigInvalid);
}

TEST_CASE("in-degree tail of the static model has the prescribed exponent") {
    const DirectedGraph g = scale_free_digraph(sf_config(10000, 10.0, 3.0, 1234));
    const double gamma_hat = fit_exponent(g, 10);
    CHECK(gamma_hat > 2.5);
    CHECK(gamma_hat < 3.5);
}

TEST_CASE("config sidecar JSON") {
    const std::string j = config_json(sf_config(100, 5.0, 3.0, 42));
    for (const char* key : {"\"model\"", "\"n\"", "\"k\"", "\"edge_target\"", "\"seed\"",
                            "\"gamma_in\"", "\"gamma_out\"", "\"rng\""})
        CHECK(j.find(key) != std::string::npos);
    CHECK(j.find("static_scale_free") != std::string::npos);
}
