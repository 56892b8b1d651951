// Test-only oracles, independent of the library's algorithm paths.
#pragma once

#include <random>
#include <set>
#include <vector>

#include "hitpack/graph.hpp"
#include "hitpack/instance.hpp"

namespace hitpack::testutil {

// Maximum matching by exhaustive branching over edges (independent of the
// blossom code).
inline int brute_nu_rec(const std::vector<std::pair<int, int>> &edges, std::size_t idx,
                        unsigned used) {
    if (idx == edges.size()) return 0;
    int best = brute_nu_rec(edges, idx + 1, used);
    auto [u, v] = edges[idx];
    if (!((used >> u) & 1) && !((used >> v) & 1))
        best = std::max(best, 1 + brute_nu_rec(edges, idx + 1, used | (1u << u) | (1u << v)));
    return best;
}

inline int brute_nu(const Graph &g) {
    auto edges = g.edges();
    return brute_nu_rec(edges, 0, 0);
}

// All labeled graphs on n vertices (n <= 5 advisable).
inline std::vector<Graph> all_graphs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<Graph> out;
    for (long mask = 0; mask < (1L << pairs.size()); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if ((mask >> b) & 1) edges.push_back(pairs[b]);
        out.push_back(Graph::from_edges(n, edges));
    }
    return out;
}

inline Graph random_graph(int n, double p, std::mt19937 &rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

inline std::vector<int> random_subset(int n, std::mt19937 &rng) {
    std::vector<int> out;
    std::bernoulli_distribution coin(0.5);
    for (int v = 0; v < n; ++v)
        if (coin(rng)) out.push_back(v);
    return out;
}

// Exhaustive treewidth over all elimination orders (n <= 8).
inline int brute_treewidth(const Graph &g) {
    std::vector<int> order(g.n);
    for (int i = 0; i < g.n; ++i) order[i] = i;
    int best = g.n;
    do {
        std::vector<std::vector<char>> adj(g.n, std::vector<char>(g.n, 0));
        for (int v = 0; v < g.n; ++v)
            for (int w : g.adj[v]) adj[v][w] = 1;
        std::vector<char> gone(g.n, 0);
        int width = -1;
        for (int v : order) {
            std::vector<int> nb;
            for (int w = 0; w < g.n; ++w)
                if (!gone[w] && adj[v][w]) nb.push_back(w);
            width = std::max(width, static_cast<int>(nb.size()));
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b)
                    adj[nb[a]][nb[b]] = adj[nb[b]][nb[a]] = 1;
            gone[v] = 1;
        }
        best = std::min(best, width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

}  // namespace hitpack::testutil
