#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hitpack {

// Undirected simple graph over vertex ids 0..n-1 with sorted adjacency lists.
// Graphs are treated as immutable values once built; operations that "modify"
// a graph return a new one.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    Graph() = default;
    explicit Graph(int n_) : n(n_), adj(n_) {}

    static Graph from_edges(int n, const std::vector<std::pair<int, int>> &edges);

    bool has_edge(int u, int v) const {
        if (u < 0 || u >= n || v < 0 || v >= n || u == v) return false;
        const auto &a = adj[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    int edge_count() const {
        std::size_t m = 0;
        for (const auto &a : adj) m += a.size();
        return static_cast<int>(m / 2);
    }

    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Graph &other) const = default;
};

// G - S with surviving vertices re-indexed to 0..n'-1 in increasing id order.
// Also returns the old->new id map (-1 for deleted vertices).
std::pair<Graph, std::vector<int>> delete_vertices(const Graph &g, const std::vector<int> &s);

// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<int>> components(const Graph &g);

bool is_connected(const Graph &g);
bool is_acyclic(const Graph &g);

// Induced subgraph on `verts` (need not be sorted); vertices re-indexed in the
// order given by the sorted vertex list. Returns old->new map as well.
std::pair<Graph, std::vector<int>> induced_subgraph(const Graph &g, const std::vector<int> &verts);

// Small named graphs used throughout the tests and reductions.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph petersen_graph();

}  // namespace hitpack
