#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hitpack/dp_cycle.hpp"
#include "hitpack/packing.hpp"
#include "oracle_util.hpp"

using namespace hitpack;

namespace {

Instance make(Graph g, std::vector<int> undel, int k, int ell) {
    Instance inst;
    inst.graph = std::move(g);
    inst.undeletable = std::move(undel);
    std::sort(inst.undeletable.begin(), inst.undeletable.end());
    inst.k = k;
    inst.ell = ell;
    inst.family = ObjectFamily::cycle();
    return inst;
}

using Pairs = std::vector<std::pair<int, int>>;

}  // namespace

TEST_CASE("reduce_matching") {
    // Path join: two segments sharing an endpoint merge.
    auto [m1, l1] = reduce_matching({{0, 1}, {1, 2}}, 0);
    CHECK(m1 == Pairs{{0, 2}});
    CHECK(l1 == 0);

    // Three segments forming a closed triangle collapse into one cycle.
    // (The displayed rule in the source material keeps one dangling pair
    // here; that breaks the endpoint-matching invariant at joins, so the
    // segment triple is consumed entirely.)
    auto [m2, l2] = reduce_matching({{0, 1}, {1, 2}, {0, 2}}, 0);
    CHECK(m2.empty());
    CHECK(l2 == 1);

    // Already a matching: untouched.
    auto [m3, l3] = reduce_matching({{0, 1}, {2, 3}}, 5);
    CHECK(m3 == Pairs{{0, 1}, {2, 3}});
    CHECK(l3 == 5);

    // A four-segment alternating cycle closes exactly one cycle.
    auto [m4, l4] = reduce_matching({{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 0);
    CHECK(m4.empty());
    CHECK(l4 == 1);

    // Termination leaves no vertex with two incident pairs.
    std::mt19937 rng(83);
    for (int round = 0; round < 100; ++round) {
        Pairs m;
        for (int i = 0; i < 6; ++i) {
            int a = static_cast<int>(rng() % 8), b = static_cast<int>(rng() % 8);
            if (a == b) continue;
            auto pr = std::minmax(a, b);
            if (std::find(m.begin(), m.end(), std::make_pair(pr.first, pr.second)) == m.end())
                m.emplace_back(pr.first, pr.second);
        }
        auto [r, lam] = reduce_matching(m, 0);
        CHECK(lam >= 0);
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = i + 1; j < r.size(); ++j) {
                CHECK(r[i].first != r[j].first);
                CHECK(r[i].first != r[j].second);
                CHECK(r[i].second != r[j].first);
                CHECK(r[i].second != r[j].second);
            }
    }
}

TEST_CASE("combine_cycle_types") {
    // Identity: combining with the all-uncovered type changes nothing.
    CycleType t1{{2}, {0, 1}, {3}, {{0, 1}}};
    CycleType idle{{0, 1, 2, 3}, {}, {}, {}};
    auto r = combine_cycle_types(t1, idle);
    REQUIRE(r.has_value());
    CHECK(r->first == t1);
    CHECK(r->second == 0);

    // Two matching paths with the same endpoints close a cycle.
    CycleType p{{}, {0, 1}, {}, {{0, 1}}};
    auto closed = combine_cycle_types(p, p);
    REQUIRE(closed.has_value());
    CHECK(closed->first == CycleType{{}, {}, {0, 1}, {}});
    CHECK(closed->second == 1);

    // Degree-3 veto.
    CycleType full{{1}, {}, {0}, {}};
    CycleType endpoint{{}, {0, 1}, {}, {{0, 1}}};
    CHECK_FALSE(combine_cycle_types(full, endpoint).has_value());
}

TEST_CASE("solve_cycle_dp examples") {
    CHECK(solve_cycle_dp(make(complete_graph(3), {}, 1, 1)).yes);

    // Two disjoint C6s always pack two cycles.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 6; ++i) {
        edges.emplace_back(i, (i + 1) % 6);
        edges.emplace_back(6 + i, 6 + (i + 1) % 6);
    }
    CHECK_FALSE(solve_cycle_dp(make(Graph::from_edges(12, edges), {}, 0, 2)).yes);

    CHECK(solve_cycle_dp(make(complete_graph(4), {0, 1, 2, 3}, 0, 2)).yes);
}

TEST_CASE("solve_cycle_dp agrees with the oracle") {
    for (int n = 1; n <= 4; ++n)
        for (const Graph &g : testutil::all_graphs(n))
            for (int k = 0; k <= 2; ++k)
                for (int ell = 0; ell <= 2; ++ell) {
                    Instance inst = make(g, {}, k, ell);
                    CHECK(solve_cycle_dp(inst).yes == brute_hitpack(inst).yes);
                }
    std::mt19937 rng(89);
    for (int round = 0; round < 200; ++round) {
        int n = 5 + static_cast<int>(rng() % 3);
        Instance inst = make(testutil::random_graph(n, 0.5, rng), testutil::random_subset(n, rng),
                             static_cast<int>(rng() % 3), static_cast<int>(rng() % 3));
        Verdict a = solve_cycle_dp(inst);
        Verdict b = brute_hitpack(inst);
        REQUIRE(a.yes == b.yes);
        if (a.yes && a.witness) CHECK(verify_solution(inst, *a.witness));
    }
}
