#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hitpack/instance.hpp"
#include "hitpack/treewidth.hpp"

namespace hitpack {

// Bag-interaction type for the H-packing DP. Each part is one partial copy
// of the pattern: h maps pattern vertices to bag vertex ids, kUp (not packed
// yet / above the bag) or kDown (packed strictly below the bag). Uncovered
// bag vertices (part 0) are implicit. Parts are kept sorted by their minimum
// bag image so equal types compare equal.
struct HType {
    static constexpr int kUp = -1;
    static constexpr int kDown = -2;

    std::vector<std::vector<int>> parts;  // each of size |V(H)|

    void canonicalize();
    auto operator<=>(const HType &) const = default;
};

// The three extension families (uncovered / join an existing part / start a
// new copy). part = 0 keeps v uncovered; 1..w extends that part; w+1 opens a
// new part. Syntactic, per the bag-edge condition; realizability filtering
// happens in the DP.
std::vector<HType> extend_type(const HType &t, const Graph &g, const Graph &h, int v, int part);

// Removes bag vertex v from the type (inverse of extension): uncovered drop,
// singleton-part drop, or re-mapping the preimage to kDown.
HType remove_type(const HType &t, int v);

// Combination for join nodes; nullopt when the bag interactions disagree or
// some pattern vertex would be packed below on both sides.
std::optional<HType> combine_types(const HType &t1, const HType &t2);

struct HgraphResult {
    std::uint64_t count = 0;  // number of solution sets
    Verdict verdict;
};

// Counting DP for Subgraph(H) instances over a nice decomposition without
// introduce-edge nodes.
HgraphResult solve_hgraph_dp(const Instance &inst, const NiceDecomposition &nd);
HgraphResult solve_hgraph_dp(const Instance &inst);

}  // namespace hitpack
