#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "boolfilter/graph.hpp"
#include "boolfilter/io.hpp"

using namespace boolfilter;

namespace {

std::set<std::pair<NodeId, NodeId>> pairs(const NetworkModel& m)
{
    std::set<std::pair<NodeId, NodeId>> out;
    for (const Edge& e : m.edges())
        out.insert({e.from, e.to});
    return out;
}

std::vector<NodeId> ids(std::initializer_list<NodeId> v) { return v; }

} // namespace

TEST_CASE("build: minimal two-node model")
{
    const auto m = NetworkModel::build(2, {{0, 1, 0.1}});
    CHECK(m.size() == 2);
    CHECK(m.in_neighbors(1) == ids({0}));
    CHECK(m.in_neighbors(0).empty());
}

TEST_CASE("build: in-neighbors follow the edge set")
{
    const auto m = NetworkModel::build(3, {{0, 1, 0.1}, {1, 2, 0.1}, {2, 1, 0.1}});
    CHECK(m.in_neighbors(1) == ids({0, 2}));
    CHECK(m.in_neighbors(2) == ids({1}));
    CHECK(m.edge_count() == 3);
    CHECK(m.max_in_degree() == 2);
}

TEST_CASE("build: rejects invalid edges")
{
    CHECK_THROWS_AS(NetworkModel::build(2, {{1, 0, 0.5}}), ModelError); // into the external threat
    CHECK_THROWS_AS(NetworkModel::build(2, {{0, 2, 0.5}}), ModelError); // out of range
    CHECK_THROWS_AS(NetworkModel::build(3, {{1, 1, 0.5}}), ModelError); // self loop
    CHECK_THROWS_AS(NetworkModel::build(2, {{0, 1, 1.5}}), ModelError);
    CHECK_THROWS_AS(NetworkModel::build(2, {{0, 1, -0.1}}), ModelError);
    CHECK_THROWS_AS(NetworkModel::build(2, {{0, 1, NAN}}), ModelError);
    CHECK_THROWS_AS(NetworkModel::build(3, {{0, 1, 0.1}, {0, 1, 0.2}}), ModelError);
    CHECK_THROWS_AS(NetworkModel::build(0, {}), ModelError);
}

TEST_CASE("in_neighbors: out-of-range node")
{
    const auto m = gen_ring(4, 0.1);
    CHECK_THROWS_AS(m.in_neighbors(4), std::out_of_range);
}

TEST_CASE("gen_ring: directed cycle over 1..n-1 fed by node 0")
{
    const auto m4 = gen_ring(4, 0.1);
    CHECK(pairs(m4) == std::set<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 3}, {3, 1}});
    for (const Edge& e : m4.edges())
        CHECK(e.rho == 0.1);

    const auto m3 = gen_ring(3, 0.1);
    CHECK(pairs(m3) == std::set<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 1}});
    CHECK(gen_ring(5, 0.1).in_neighbors(2) == ids({1}));
    CHECK_THROWS_AS(gen_ring(2, 0.1), ModelError);
}

TEST_CASE("gen_ring: in-degree profile")
{
    for (std::size_t n : {3, 4, 7, 20}) {
        const auto m = gen_ring(n, 0.3);
        CHECK(m.in_edges(0).empty());
        CHECK(m.in_edges(1).size() == 2);
        for (NodeId l = 2; l < n; ++l)
            CHECK(m.in_edges(l).size() == 1);
    }
}

TEST_CASE("gen_erdos_renyi: extreme edge probabilities")
{
    Rng rng(1);
    CHECK(gen_erdos_renyi(10, 0.0, 0.1, rng).edge_count() == 0);
    const auto full = gen_erdos_renyi(3, 1.0, 0.1, rng);
    CHECK(pairs(full) == std::set<std::pair<NodeId, NodeId>>{{0, 1}, {0, 2}, {1, 2}, {2, 1}});
    CHECK_THROWS_AS(gen_erdos_renyi(1, 0.5, 0.1, rng), ModelError);
    CHECK_THROWS_AS(gen_erdos_renyi(5, 1.5, 0.1, rng), ModelError);
}

TEST_CASE("gen_erdos_renyi: reproducible and never attacks node 0")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng a(seed), b(seed);
        const auto ga = gen_erdos_renyi(30, 0.2, 0.1, a);
        const auto gb = gen_erdos_renyi(30, 0.2, 0.1, b);
        CHECK(ga == gb);
        CHECK(ga.in_edges(0).empty());
    }
}

TEST_CASE("gen_erdos_renyi: mean edge count matches the binomial expectation")
{
    // admissible ordered pairs: (k, l), k != l, l != 0 -> (n-1)^2
    const std::size_t n = 100;
    const double prob = 0.2;
    const double pairs_total = static_cast<double>((n - 1) * (n - 1));
    const double expected = prob * pairs_total;
    const double sd = std::sqrt(pairs_total * prob * (1.0 - prob));
    const int samples = 1000;
    double sum = 0.0;
    for (int s = 0; s < samples; ++s) {
        Rng rng(static_cast<std::uint64_t>(s));
        sum += static_cast<double>(gen_erdos_renyi(n, prob, 0.1, rng).edge_count());
    }
    const double mean = sum / samples;
    CHECK(std::abs(mean - expected) < 3.0 * sd / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("graph file: parse, diagnostics and round trip")
{
    const auto m = parse_graph(R"({"n": 3, "edges": [[1, 2, 0.1], [3, 2, 0.25], [2, 3, 1]]})");
    CHECK(m.size() == 3);
    CHECK(m.in_neighbors(1) == ids({0, 2}));

    CHECK_THROWS_AS(parse_graph("{\"n\": 3, \"edges\": [[1, 2, 0.1],"), ParseError);
    CHECK_THROWS_WITH_AS(parse_graph(R"({"n": 3, "edges": [[1, 2, "x"]]})"), "edges[0][2]: expected number",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_graph(R"({"n": 3, "edges": [[1, 2]]})"), "edges[0]: expected [from, to, rho]",
                         ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"edges": []})"), ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"n": 3, "edges": [[2, 1, 0.5]]})"), ModelError);
    CHECK_THROWS_AS(parse_graph(R"({"n": 3, "edges": [[1, 4, 0.5]]})"), ModelError);

    try {
        parse_graph("{\n\"n\": 3,\n\"edges\": [[1, 2, 0.1]\n");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("graph file: write/load round trip is exact")
{
    const auto dir = std::filesystem::temp_directory_path() / "boolfilter_graph_test";
    std::filesystem::create_directories(dir);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(seed);
        std::vector<Edge> edges;
        const std::size_t n = 2 + rng.below(12);
        for (NodeId k = 0; k < n; ++k)
            for (NodeId l = 1; l < n; ++l)
                if (k != l && rng.bernoulli(0.3))
                    edges.push_back({k, l, rng.uniform()});
        const auto m = NetworkModel::build(n, edges);
        const auto path = dir / ("g" + std::to_string(seed) + ".json");
        write_graph(m, path);
        const auto back = load_graph(path);
        CHECK(back == m);
        CHECK(format_graph(back) == read_file(path));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("format_graph: edges sorted lexicographically, 1-based")
{
    const auto m = NetworkModel::build(3, {{2, 1, 0.5}, {0, 2, 0.25}, {0, 1, 0.1}});
    CHECK(format_graph(m) == "{\"edges\":[[1,2,0.1],[1,3,0.25],[3,2,0.5]],\"n\":3}\n");
}
