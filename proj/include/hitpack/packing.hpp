#pragma once

#include <optional>
#include <vector>

#include "hitpack/instance.hpp"

namespace hitpack {

// A collection of pairwise vertex-disjoint objects. Edges and cliques are
// sorted vertex sets; cycles and subgraph copies keep a meaningful order
// (cycles as cyclic vertex sequences).
struct Packing {
    std::vector<std::vector<int>> objects;

    int size() const { return static_cast<int>(objects.size()); }
};

// Checks disjointness and that every object is a valid family member in g.
bool validate_packing(const Graph &g, const ObjectFamily &family, const Packing &p,
                      std::string *why = nullptr);

// All copies of the family object in g, duplicate-free. For Cycle the
// through-vertex is mandatory and the copies are the chordless cycles through
// it. For Subgraph, copies are vertex sets admitting a (not necessarily
// induced) embedding of the pattern.
std::vector<std::vector<int>> enumerate_copies(const Graph &g, const ObjectFamily &family,
                                               std::optional<int> through_vertex = std::nullopt);

// Exact maximum number of vertex-disjoint family objects (branch and bound;
// desk scale, exponential worst case).
int max_packing(const Graph &g, const ObjectFamily &family);

// A packing of exactly `target` objects, or nullopt iff max_packing < target.
std::optional<Packing> find_packing(const Graph &g, const ObjectFamily &family, int target);

// Exhaustive HitPack oracle: tries all S subseteq V\U in increasing size,
// lexicographic within a size; YES with the first S whose residual packing
// number is < ell.
Verdict brute_hitpack(const Instance &inst);

// Checks a proposed solution: S subseteq V\U, |S| <= k, max_packing(G-S) < ell.
bool verify_solution(const Instance &inst, const std::vector<int> &s, std::string *why = nullptr);

}  // namespace hitpack
