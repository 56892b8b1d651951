#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hitpack/graph.hpp"

namespace hitpack {

// A matching, stored as vertex pairs with first < second, sorted.
struct Matching {
    std::vector<std::pair<int, int>> edges;

    int size() const { return static_cast<int>(edges.size()); }
    // Partner map: mate[v] = matched partner or -1.
    std::vector<int> mate(int n) const;
};

bool is_valid_matching(const Graph &g, const Matching &m);

// Exact maximum matching via blossom contraction. Deterministic: vertices are
// scanned in increasing id order at every choice point.
Matching maximum_matching(const Graph &g);

int matching_number(const Graph &g);

// An augmenting path for m in g (alternating, both endpoints unsaturated), as
// a vertex sequence; nullopt iff m is maximum (Berge).
std::optional<std::vector<int>> find_augmenting_path(const Graph &g, const Matching &m);

}  // namespace hitpack
