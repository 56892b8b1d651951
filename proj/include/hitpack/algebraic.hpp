#pragma once

#include <cstdint>
#include <vector>

#include "hitpack/graph.hpp"

namespace hitpack {

// The table S |-> nu(G - S) over all S subseteq {0..k-1}.
struct MatchFunction {
    int k = 0;
    std::vector<int> table;  // indexed by subset mask, size 2^k

    bool operator==(const MatchFunction &) const = default;
    bool operator<(const MatchFunction &o) const { return table < o.table; }
};

MatchFunction match_function(const Graph &g, int k);

// Randomized perfect-matching test: substitute uniform field elements into
// the Tutte matrix and test the determinant. One-sided error (false
// negatives only, probability <= (2n/p)^trials).
bool has_pm_algebraic(const Graph &g, int trials, std::uint64_t seed);

// The lifting G* used to reduce deletion effects to perfect-matching
// queries: n - 2 nu(G) + 2k fresh vertices adjacent to every original
// vertex, appended at ids n, n+1, .... k0 = k + min(3k, n - 2 nu(G) + 2k).
struct GstarLift {
    Graph gstar;
    int k0 = 0;
    int num_new = 0;  // new vertex ids are n .. n+num_new-1
};
GstarLift gstar_lift(const Graph &g, int k);

// Number of distinct match-function tables over a family of graphs.
int count_distinct_match_functions(const std::vector<Graph> &family, int k);

}  // namespace hitpack
