#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hitpack/treewidth.hpp"
#include "oracle_util.hpp"

using namespace hitpack;

TEST_CASE("decomposition widths") {
    // A tree has width 1, a clique forces one bag.
    Graph tree = Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}});
    CHECK(compute_decomposition(tree).width() == 1);
    CHECK(compute_decomposition(complete_graph(4)).width() == 3);
    CHECK(compute_decomposition(cycle_graph(5)).width() == 2);
    CHECK(testutil::brute_treewidth(cycle_graph(5)) == 2);
}

TEST_CASE("exact width matches brute force on small graphs") {
    for (int n = 1; n <= 4; ++n)
        for (const Graph &g : testutil::all_graphs(n))
            CHECK(compute_decomposition(g).width() == testutil::brute_treewidth(g));
    std::mt19937 rng(53);
    for (int round = 0; round < 40; ++round) {
        Graph g = testutil::random_graph(7, 0.4, rng);
        CHECK(compute_decomposition(g).width() == testutil::brute_treewidth(g));
    }
}

TEST_CASE("decompositions validate on random graphs") {
    std::mt19937 rng(59);
    for (int round = 0; round < 500; ++round) {
        int n = 1 + static_cast<int>(rng() % 20);
        Graph g = testutil::random_graph(n, 0.3, rng);
        TreeDecomposition td = compute_decomposition(g);
        std::string why;
        CHECK_MESSAGE(validate_decomposition(td, g, &why), why);
    }
}

TEST_CASE("make_nice on K2 with edges introduces the edge once") {
    Graph k2 = complete_graph(2);
    TreeDecomposition td;
    td.bags = {{0, 1}};
    NiceDecomposition nd = make_nice(td, k2, true);
    int intro_edges = 0;
    for (const auto &node : nd.nodes)
        if (node.kind == NiceNode::Kind::IntroduceEdge) ++intro_edges;
    CHECK(intro_edges == 1);
    CHECK(validate_nice(nd, k2));
}

TEST_CASE("make_nice node count stays linear on forests") {
    std::mt19937 rng(61);
    for (int n : {1, 5, 12, 20}) {
        // Random forest: attach each vertex to a random earlier one or none.
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < n; ++v)
            if (rng() % 3) edges.emplace_back(v, static_cast<int>(rng() % v));
        Graph g = Graph::from_edges(n, edges);
        NiceDecomposition nd = make_nice(compute_decomposition(g), g, true);
        CHECK(static_cast<int>(nd.nodes.size()) <= 10 * n + 10);
        CHECK(validate_nice(nd, g));
    }
}

TEST_CASE("make_nice on the empty graph is a bare leaf chain") {
    Graph g(0);
    NiceDecomposition nd = make_nice(compute_decomposition(g), g, true);
    CHECK(nd.nodes[nd.root].bag.empty());
    for (const auto &node : nd.nodes) CHECK(node.bag.empty());
}

TEST_CASE("make_nice preserves width and validity") {
    std::mt19937 rng(67);
    for (int round = 0; round < 100; ++round) {
        int n = 1 + static_cast<int>(rng() % 10);
        Graph g = testutil::random_graph(n, 0.4, rng);
        TreeDecomposition td = compute_decomposition(g);
        for (bool with_edges : {false, true}) {
            NiceDecomposition nd = make_nice(td, g, with_edges);
            CHECK(nd.width() == td.width());
            std::string why;
            CHECK_MESSAGE(validate_nice(nd, g, &why), why);
        }
    }
}

TEST_CASE("td format parse and emit") {
    TreeDecomposition td = parse_td_string("s td 1 2 2\nb 1 1 2\n", 2);
    REQUIRE(td.bags.size() == 1);
    CHECK(td.bags[0] == std::vector<int>{0, 1});

    // Round trip.
    Graph g = cycle_graph(5);
    TreeDecomposition orig = compute_decomposition(g);
    TreeDecomposition back = parse_td_string(emit_td(orig, g.n), g.n);
    CHECK(back.bags == orig.bags);
    CHECK(back.tree_edges == orig.tree_edges);

    CHECK_THROWS_AS(parse_td_string("s td 1 2 2\nb 1 1 3\n", 2), ParseError);
}
