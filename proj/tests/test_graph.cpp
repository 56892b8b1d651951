#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hitpack/graph.hpp"
#include "hitpack/instance.hpp"
#include "oracle_util.hpp"

using namespace hitpack;

namespace {

const char *k3_cycle_text =
    "n 3\n"
    "e 0 1\n"
    "e 1 2\n"
    "e 0 2\n"
    "k 1\n"
    "l 1\n"
    "family cycle\n";

}  // namespace

TEST_CASE("parse_instance accepts the K3 cycle instance") {
    Instance inst = parse_instance_string(k3_cycle_text);
    CHECK(inst.graph.n == 3);
    CHECK(inst.graph.edge_count() == 3);
    CHECK(inst.k == 1);
    CHECK(inst.ell == 1);
    CHECK(inst.family.kind == ObjectFamily::Kind::Cycle);
    CHECK(inst.undeletable.empty());
}

TEST_CASE("parse_instance reads undeletable vertices") {
    std::string text = std::string(k3_cycle_text) + "u 0\nu 1\nu 2\n";
    Instance inst = parse_instance_string(text);
    CHECK(inst.undeletable == std::vector<int>{0, 1, 2});
}

TEST_CASE("parse_instance rejects clique order below two") {
    std::string text = "n 2\ne 0 1\nk 0\nl 1\nfamily clique 1\n";
    CHECK_THROWS_AS(parse_instance_string(text), ParseError);
}

TEST_CASE("parse_instance error paths") {
    CHECK_THROWS_AS(parse_instance_string("n 2\ne 0 1\ne 0 1\nk 0\nl 0\nfamily edge\n"),
                    ParseError);  // duplicate edge
    CHECK_THROWS_AS(parse_instance_string("n 2\ne 0 5\nk 0\nl 0\nfamily edge\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_string("n 2\ne 0 1\nl 0\nfamily edge\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_string("n 2\ne 0 1\nk 0\nfamily edge\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_string("n 2\ne 0 1\nk 0\nl 0\n"), ParseError);
    // Disconnected pattern graph.
    CHECK_THROWS_AS(
        parse_instance_string("n 2\ne 0 1\nk 0\nl 0\nfamily subgraph\nh n 3\nh e 0 1\n"),
        ParseError);
    // Vertex line before the 'n' directive.
    CHECK_THROWS_AS(parse_instance_string("e 0 1\nn 2\nk 0\nl 0\nfamily edge\n"), ParseError);
}

TEST_CASE("delete_vertices basic shapes") {
    Graph k3 = complete_graph(3);
    auto [edge, remap] = delete_vertices(k3, {0});
    CHECK(edge.n == 2);
    CHECK(edge.edge_count() == 1);
    CHECK(remap == std::vector<int>{-1, 0, 1});

    auto [same, remap2] = delete_vertices(k3, {});
    CHECK(same == k3);
    CHECK(remap2 == std::vector<int>{0, 1, 2});

    Graph c4 = cycle_graph(4);
    auto [iso, remap3] = delete_vertices(c4, {1, 3});
    CHECK(iso.n == 2);
    CHECK(iso.edge_count() == 0);

    CHECK_THROWS_AS(delete_vertices(k3, {7}), std::out_of_range);
}

TEST_CASE("components") {
    Graph two_edges = Graph::from_edges(4, {{0, 1}, {2, 3}});
    auto comps = components(two_edges);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<int>{0, 1});
    CHECK(comps[1] == std::vector<int>{2, 3});

    CHECK(components(Graph(0)).empty());
    CHECK(components(path_graph(4)).size() == 1);
}

TEST_CASE("deletion keeps exactly the edges outside the deleted set") {
    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        Graph g = testutil::random_graph(8, 0.4, rng);
        std::vector<int> s = testutil::random_subset(8, rng);
        auto [h, remap] = delete_vertices(g, s);
        int expect = 0;
        for (auto [u, v] : g.edges())
            if (remap[u] >= 0 && remap[v] >= 0) ++expect;
        CHECK(h.edge_count() == expect);
    }
}

TEST_CASE("emit then parse is the identity on instances") {
    std::mt19937 rng(11);
    std::vector<ObjectFamily> families = {
        ObjectFamily::edge(), ObjectFamily::clique(3), ObjectFamily::cycle(),
        ObjectFamily::subgraph(path_graph(3)), ObjectFamily::subgraph(cycle_graph(4))};
    for (int round = 0; round < 50; ++round) {
        Instance inst;
        inst.graph = testutil::random_graph(6, 0.5, rng);
        inst.undeletable = testutil::random_subset(6, rng);
        inst.k = static_cast<int>(rng() % 4);
        inst.ell = static_cast<int>(rng() % 4);
        inst.family = families[rng() % families.size()];
        Instance back = parse_instance_string(emit_instance(inst));
        CHECK(back.graph == inst.graph);
        CHECK(back.undeletable == inst.undeletable);
        CHECK(back.k == inst.k);
        CHECK(back.ell == inst.ell);
        CHECK(back.family.kind == inst.family.kind);
        CHECK(back.family.q == inst.family.q);
        CHECK(back.family.pattern == inst.family.pattern);
    }
}

TEST_CASE("named graphs") {
    CHECK(petersen_graph().edge_count() == 15);
    CHECK(is_connected(petersen_graph()));
    CHECK(is_acyclic(path_graph(5)));
    CHECK_FALSE(is_acyclic(cycle_graph(5)));
}
