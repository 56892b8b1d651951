#pragma once

#include <optional>
#include <vector>

#include "hitpack/instance.hpp"
#include "hitpack/packing.hpp"

namespace hitpack {

// Feedback-vertex-set size threshold: above it, k+l vertex-disjoint cycles
// are guaranteed and the instance is a trivial NO. Logs are base 2; for
// k+l < 2 both log terms clamp to 0.
long long erdos_posa_threshold(int k, int ell);

// An FVS of size <= bound, or nullopt iff none exists. Exact search
// (degree-<=1 pruning plus branching on a shortest cycle).
std::optional<std::vector<int>> compute_fvs(const Graph &g, int bound);

// Smallest FVS of size <= bound (iterative deepening over compute_fvs).
std::optional<std::vector<int>> minimum_fvs(const Graph &g, int bound);

// A path of the forest G' = G - F anchored at a pair of FVS vertices: the
// endpoints lie in N_i and N_j and the three usability conditions hold.
struct UsablePath {
    int i, j;                // anchor pair in graph coordinates, i <= j
    std::vector<int> verts;  // path in forest coordinates, front in N_i, back in N_j
};

// Degree reduction (the marking procedure): an equivalent instance whose
// forest degrees are bounded by Upsilon = |F|^3 + (k+3)|F|^2 + (k+2)|F|.
// Solutions of the reduced instance are solutions of the input unchanged;
// ids[v] maps reduced ids back to input ids.
struct DegreeReduced {
    Instance inst;
    std::vector<int> fvs;
    std::vector<int> ids;
};
DegreeReduced reduce_degree(const Instance &inst, const std::vector<int> &fvs);

// Shared per-branch state for steps 3-5.
struct FvsContext {
    Instance inst;                       // F subseteq U holds
    std::vector<int> fvs;                // sorted, graph coordinates
    Graph forest;                        // G - F
    std::vector<int> to_forest;          // graph id -> forest id (-1 on F)
    std::vector<int> from_forest;        // forest id -> graph id
    std::vector<std::vector<int>> nbr;   // per F position: N_i in forest coordinates
    long long upsilon = 0, gamma = 0;
    std::vector<UsablePath> paths;       // all usable paths
};
FvsContext build_fvs_context(const Instance &inst, const std::vector<int> &fvs);

bool is_usable(const FvsContext &ctx, const UsablePath &p);

// One path per collection, pairwise vertex-disjoint, or nullopt. Bottom-up
// tree DP with a subset DP across the trees of the forest.
std::optional<std::vector<std::vector<int>>> find_disjoint_paths(
    const Graph &forest, const std::vector<std::vector<std::vector<int>>> &collections);

// Same, but reports the chosen index within each collection.
std::optional<std::vector<int>> find_disjoint_path_indices(
    const Graph &forest, const std::vector<std::vector<std::vector<int>>> &collections);

// A usable cycle packing of size ell whose forest paths all come from
// avail (indices into ctx.paths), found by enumerating annotated cycle
// structures over F; nullopt if none exists.
struct UsableCyclePacking {
    Packing packing;             // cycles in graph coordinates
    std::vector<int> used_paths; // indices into ctx.paths
};
std::optional<UsableCyclePacking> find_usable_packing(const FvsContext &ctx,
                                                      const std::vector<int> &avail, int ell);

// The Get-Candidates branching: promising (avail, hit) pairs, as index sets
// into ctx.paths.
struct CandidatePair {
    std::vector<int> avail;
    std::vector<int> hit;
};
std::vector<CandidatePair> get_candidates(const FvsContext &ctx, int ell, int k);

// X subseteq V(forest)\U of size <= k hitting every path, or nullopt. 2^k
// branching around the deepest path top.
std::optional<std::vector<int>> hit_paths_on_forest(const Graph &forest,
                                                    const std::vector<int> &undeletable,
                                                    const std::vector<std::vector<int>> &paths,
                                                    int k);

Verdict solve_cycle_fvs(const Instance &inst);

}  // namespace hitpack
