#pragma once

#include "hitpack/instance.hpp"

namespace hitpack {

// 3^{k+l}-style branching for the Edge family (also accepts Clique(2)).
// Preprocessing answers trivial instances via matching numbers; otherwise
// branch on the endpoints of an augmenting path for a maximum matching of
// G[U]: delete one endpoint, delete the other, or make both undeletable.
Verdict solve_edge_branch(const Instance &inst);

// Generic branching for Clique(q) / Subgraph(H): repeatedly find a packing of
// l disjoint copies; if none exists the accumulated deletions are a solution,
// otherwise branch on every deletable covered vertex.
Verdict solve_h_branch(const Instance &inst);

}  // namespace hitpack
