#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hitpack/instance.hpp"
#include "hitpack/treewidth.hpp"

namespace hitpack {

// Bag-interaction type for the cycle-packing DP: Y0/Y1/Y2 partition the bag
// by packing degree, M pairs up the path endpoints in Y1.
struct CycleType {
    std::vector<int> y0, y1, y2;            // sorted
    std::vector<std::pair<int, int>> m;     // u < v, sorted; perfect matching on y1

    auto operator<=>(const CycleType &) const = default;
};

// Fixpoint of the path-join / cycle-close rewriting. Path join replaces
// {uv, vw} by {uw}; when the third side uw is already present the three
// segments close a cycle, all of them vanish and lambda grows. Terminates in
// at most |M| steps with no vertex on two pairs.
std::pair<std::vector<std::pair<int, int>>, int> reduce_matching(
    std::vector<std::pair<int, int>> m, int lambda);

// Join-node type combination: nullopt when a vertex would reach packing
// degree 3; otherwise the combined type plus the number of cycles closed.
std::optional<std::pair<CycleType, int>> combine_cycle_types(const CycleType &t1,
                                                             const CycleType &t2);

// Decision DP for Cycle instances; requires a nice decomposition with
// introduce-edge nodes (each edge introduced exactly once).
Verdict solve_cycle_dp(const Instance &inst, const NiceDecomposition &nd);
Verdict solve_cycle_dp(const Instance &inst);

}  // namespace hitpack
