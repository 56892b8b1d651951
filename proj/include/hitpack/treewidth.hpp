#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hitpack/graph.hpp"

namespace hitpack {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // sorted vertex lists
    std::vector<std::pair<int, int>> tree_edges;

    int width() const {
        int w = -1;
        for (const auto &b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }
};

bool validate_decomposition(const TreeDecomposition &td, const Graph &g,
                            std::string *why = nullptr);

// Exact width for n <= 16 (elimination-order DP over vertex subsets);
// min-fill greedy above.
TreeDecomposition compute_decomposition(const Graph &g);

struct NiceNode {
    enum class Kind { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join };
    Kind kind;
    int v = -1, u = -1;         // IntroduceVertex/Forget use v; IntroduceEdge uses u,v
    std::vector<int> bag;       // sorted
    std::vector<int> children;  // node indices
};

struct NiceDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;
    bool with_edges = false;

    int width() const {
        int w = -1;
        for (const auto &n : nodes) w = std::max(w, static_cast<int>(n.bag.size()) - 1);
        return w;
    }
    // Node indices in post-order (children before parents).
    std::vector<int> post_order() const;
};

// Rooted nice form: empty root and leaf bags, one-vertex bag changes,
// binarized joins. With with_edges, every graph edge appears in exactly one
// IntroduceEdge node.
NiceDecomposition make_nice(const TreeDecomposition &td, const Graph &g, bool with_edges);

bool validate_nice(const NiceDecomposition &nd, const Graph &g, std::string *why = nullptr);

// PACE-2017 .td format; vertices 1-indexed on disk, 0-indexed in memory.
TreeDecomposition parse_td(std::istream &in, int expected_n = -1);
TreeDecomposition parse_td_string(const std::string &text, int expected_n = -1);
std::string emit_td(const TreeDecomposition &td, int n);

}  // namespace hitpack
