#pragma once

#include <optional>
#include <vector>

#include "hitpack/instance.hpp"
#include "hitpack/treewidth.hpp"

namespace hitpack {

// One DP class for a decomposition node: deletions below the bag (k0), the
// deleted bag subset (D0), and the avoidance table f0 over subsets of the
// remaining bag, where f0(A) is the q-clique packing number of G_t minus the
// deletions when additionally no vertex of A is covered.
struct CliqueClass {
    int k0 = 0;
    std::vector<int> d0;     // sorted vertex ids
    std::vector<int> f;      // indexed by subset rank over the sorted bag minus d0
    std::vector<int> repr;   // one representative deletion set (witness tracking)

    bool operator==(const CliqueClass &o) const { return k0 == o.k0 && d0 == o.d0 && f == o.f; }
};

// Introduce / forget / join procedures, exposed for unit tests. `bag` is the
// parent node's bag (sorted). The deleted flag of clique_intro corresponds to
// putting v into D0.
CliqueClass clique_intro(const CliqueClass &c, const Graph &g, const std::vector<int> &bag,
                         int v, bool deleted, int q);
CliqueClass clique_forget(const CliqueClass &c, const std::vector<int> &child_bag, int v,
                          bool was_deleted);
CliqueClass clique_join(const CliqueClass &c1, const CliqueClass &c2,
                        const std::vector<int> &bag);

// Decision DP. The decomposition must not contain introduce-edge nodes.
// Accepts Clique(q) and Edge (as Clique(2)).
Verdict solve_clique_dp(const Instance &inst, const NiceDecomposition &nd);

// Convenience: computes a decomposition internally.
Verdict solve_clique_dp(const Instance &inst);

}  // namespace hitpack
