#pragma once

namespace hitpack::stats {

// Coarse work counters for run reports: search-tree nodes across the
// branching solvers and the exhaustive oracle, and DP classes materialized.
extern long long branch_nodes;
extern long long dp_classes;

void reset();

}  // namespace hitpack::stats
