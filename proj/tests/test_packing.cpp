#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hitpack/matching.hpp"
#include "hitpack/packing.hpp"
#include "hitpack/reductions.hpp"
#include "oracle_util.hpp"

using namespace hitpack;

TEST_CASE("enumerate_copies") {
    Graph k4 = complete_graph(4);
    CHECK(enumerate_copies(k4, ObjectFamily::clique(3)).size() == 4);

    auto cycles0 = enumerate_copies(k4, ObjectFamily::cycle(), 0);
    CHECK(cycles0.size() == 3);  // the chordless triangles through 0
    for (const auto &c : cycles0) CHECK(c.size() == 3);

    Graph p3 = path_graph(3);
    auto copies = enumerate_copies(p3, ObjectFamily::subgraph(path_graph(3)));
    CHECK(copies.size() == 1);  // a path equals its reversal

    // C5 has a single chordless cycle through each vertex.
    CHECK(enumerate_copies(cycle_graph(5), ObjectFamily::cycle(), 2).size() == 1);
}

TEST_CASE("max_packing examples") {
    CHECK(max_packing(path_graph(4), ObjectFamily::edge()) == 2);
    CHECK(max_packing(complete_graph(4), ObjectFamily::clique(3)) == 1);
    // TriCyc_3 packs one triangle per distinguished side triple.
    CHECK(max_packing(gen_tricyc(3).graph, ObjectFamily::clique(3)) == 3);
}

TEST_CASE("find_packing examples") {
    Graph two_k3 = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    auto p = find_packing(two_k3, ObjectFamily::clique(3), 2);
    REQUIRE(p.has_value());
    CHECK(p->size() == 2);
    CHECK(validate_packing(two_k3, ObjectFamily::clique(3), *p));

    CHECK_FALSE(find_packing(complete_graph(3), ObjectFamily::cycle(), 2).has_value());

    auto c6 = find_packing(cycle_graph(6), ObjectFamily::cycle(), 1);
    REQUIRE(c6.has_value());
    CHECK(c6->objects[0].size() == 6);
    CHECK(validate_packing(cycle_graph(6), ObjectFamily::cycle(), *c6));
}

TEST_CASE("brute_hitpack examples") {
    Instance k3;
    k3.graph = complete_graph(3);
    k3.k = 1;
    k3.ell = 1;
    k3.family = ObjectFamily::cycle();
    Verdict yes = brute_hitpack(k3);
    CHECK(yes.yes);
    REQUIRE(yes.witness.has_value());
    CHECK(yes.witness->size() == 1);
    CHECK(verify_solution(k3, *yes.witness));

    k3.k = 0;
    CHECK_FALSE(brute_hitpack(k3).yes);
}

TEST_CASE("max packing changes by at most one per deleted vertex") {
    std::mt19937 rng(29);
    std::vector<ObjectFamily> families = {ObjectFamily::edge(), ObjectFamily::clique(3),
                                          ObjectFamily::cycle(),
                                          ObjectFamily::subgraph(path_graph(3))};
    for (int round = 0; round < 60; ++round) {
        Graph g = testutil::random_graph(7, 0.45, rng);
        for (const auto &fam : families) {
            int base = max_packing(g, fam);
            for (int v = 0; v < g.n; ++v) {
                auto [h, remap] = delete_vertices(g, {v});
                int drop = base - max_packing(h, fam);
                CHECK(drop >= 0);
                CHECK(drop <= 1);
            }
        }
    }
}

TEST_CASE("decision monotone in k and l") {
    std::mt19937 rng(31);
    for (int round = 0; round < 80; ++round) {
        Instance inst;
        inst.graph = testutil::random_graph(6, 0.5, rng);
        inst.undeletable = testutil::random_subset(6, rng);
        inst.k = static_cast<int>(rng() % 3);
        inst.ell = static_cast<int>(rng() % 3);
        inst.family = (round % 2) ? ObjectFamily::cycle() : ObjectFamily::clique(3);
        if (brute_hitpack(inst).yes) {
            Instance more_k = inst;
            ++more_k.k;
            CHECK(brute_hitpack(more_k).yes);
            Instance more_l = inst;
            ++more_l.ell;
            CHECK(brute_hitpack(more_l).yes);
        }
    }
}

TEST_CASE("edge packing number equals the matching number") {
    for (int n = 0; n <= 5; ++n)
        for (const Graph &g : testutil::all_graphs(n))
            CHECK(max_packing(g, ObjectFamily::edge()) == matching_number(g));
    std::mt19937 rng(37);
    for (int round = 0; round < 100; ++round) {
        Graph g = testutil::random_graph(8 + static_cast<int>(rng() % 3), 0.5, rng);
        CHECK(max_packing(g, ObjectFamily::edge()) == matching_number(g));
    }
}

TEST_CASE("clique(2) answered identically to edge") {
    std::mt19937 rng(41);
    for (int round = 0; round < 50; ++round) {
        Instance inst;
        inst.graph = testutil::random_graph(6, 0.5, rng);
        inst.undeletable = testutil::random_subset(6, rng);
        inst.k = static_cast<int>(rng() % 3);
        inst.ell = static_cast<int>(rng() % 3);
        inst.family = ObjectFamily::edge();
        Verdict a = brute_hitpack(inst);
        inst.family = ObjectFamily::clique(2);
        Verdict b = brute_hitpack(inst);
        CHECK(a.yes == b.yes);
    }
}
