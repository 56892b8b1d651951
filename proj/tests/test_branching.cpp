#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hitpack/branching.hpp"
#include "hitpack/packing.hpp"
#include "oracle_util.hpp"

using namespace hitpack;

namespace {

Instance make(Graph g, std::vector<int> undel, int k, int ell, ObjectFamily fam) {
    Instance inst;
    inst.graph = std::move(g);
    inst.undeletable = std::move(undel);
    std::sort(inst.undeletable.begin(), inst.undeletable.end());
    inst.k = k;
    inst.ell = ell;
    inst.family = std::move(fam);
    return inst;
}

}  // namespace

TEST_CASE("edge branching examples") {
    Verdict v = solve_edge_branch(make(complete_graph(2), {}, 1, 1, ObjectFamily::edge()));
    CHECK(v.yes);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->size() == 1);

    CHECK_FALSE(solve_edge_branch(make(complete_graph(3), {}, 1, 1, ObjectFamily::edge())).yes);

    Verdict p4 = solve_edge_branch(make(path_graph(4), {0, 1, 2, 3}, 0, 3, ObjectFamily::edge()));
    CHECK(p4.yes);
    CHECK(p4.witness->empty());
}

TEST_CASE("edge branching rejects other families") {
    CHECK_THROWS_AS(solve_edge_branch(make(complete_graph(3), {}, 1, 1, ObjectFamily::cycle())),
                    std::invalid_argument);
    // Clique(2) is the same family and must be accepted.
    CHECK(solve_edge_branch(make(complete_graph(2), {}, 1, 1, ObjectFamily::clique(2))).yes);
}

TEST_CASE("h branching examples") {
    Graph two_k3 = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    Verdict yes = solve_h_branch(make(two_k3, {}, 1, 2, ObjectFamily::clique(3)));
    CHECK(yes.yes);
    CHECK_FALSE(solve_h_branch(make(two_k3, {}, 0, 2, ObjectFamily::clique(3))).yes);
    CHECK_FALSE(solve_h_branch(
                    make(complete_graph(4), {}, 0, 1, ObjectFamily::subgraph(cycle_graph(4))))
                    .yes);
}

TEST_CASE("edge branching agrees with the oracle") {
    // Exhaustive over small graphs with every undeletable set.
    for (int n = 2; n <= 4; ++n) {
        for (const Graph &g : testutil::all_graphs(n)) {
            for (int umask = 0; umask < (1 << n); ++umask) {
                std::vector<int> undel;
                for (int v = 0; v < n; ++v)
                    if ((umask >> v) & 1) undel.push_back(v);
                for (int k = 0; k <= 2; ++k)
                    for (int ell = 0; ell <= 2; ++ell) {
                        Instance inst = make(g, undel, k, ell, ObjectFamily::edge());
                        Verdict a = solve_edge_branch(inst);
                        Verdict b = brute_hitpack(inst);
                        REQUIRE(a.yes == b.yes);
                        if (a.yes) CHECK(verify_solution(inst, *a.witness));
                    }
            }
        }
    }
    std::mt19937 rng(43);
    for (int round = 0; round < 150; ++round) {
        int n = 5 + static_cast<int>(rng() % 4);
        Instance inst = make(testutil::random_graph(n, 0.5, rng), testutil::random_subset(n, rng),
                             static_cast<int>(rng() % 4), static_cast<int>(rng() % 5),
                             ObjectFamily::edge());
        Verdict a = solve_edge_branch(inst);
        Verdict b = brute_hitpack(inst);
        REQUIRE(a.yes == b.yes);
        if (a.yes) CHECK(verify_solution(inst, *a.witness));
    }
}

TEST_CASE("h branching agrees with the oracle") {
    std::mt19937 rng(47);
    std::vector<ObjectFamily> families = {ObjectFamily::clique(3),
                                          ObjectFamily::subgraph(path_graph(3)),
                                          ObjectFamily::subgraph(cycle_graph(4))};
    for (int round = 0; round < 200; ++round) {
        int n = 4 + static_cast<int>(rng() % 4);
        Instance inst = make(testutil::random_graph(n, 0.5, rng), testutil::random_subset(n, rng),
                             static_cast<int>(rng() % 3), static_cast<int>(rng() % 3),
                             families[rng() % families.size()]);
        Verdict a = solve_h_branch(inst);
        Verdict b = brute_hitpack(inst);
        REQUIRE(a.yes == b.yes);
        if (a.yes) CHECK(verify_solution(inst, *a.witness));
    }
}
