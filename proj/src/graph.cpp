#include "hitpack/graph.hpp"

#include <cassert>
#include <stdexcept>

namespace hitpack {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>> &edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::out_of_range("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto &a : g.adj) {
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw std::invalid_argument("parallel edge");
    }
    return g;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::pair<Graph, std::vector<int>> delete_vertices(const Graph &g, const std::vector<int> &s) {
    std::vector<char> del(g.n, 0);
    for (int v : s) {
        if (v < 0 || v >= g.n) throw std::out_of_range("delete_vertices: id out of range");
        del[v] = 1;
    }
    std::vector<int> remap(g.n, -1);
    int next = 0;
    for (int v = 0; v < g.n; ++v)
        if (!del[v]) remap[v] = next++;
    Graph h(next);
    for (int v = 0; v < g.n; ++v) {
        if (del[v]) continue;
        for (int w : g.adj[v])
            if (!del[w]) h.adj[remap[v]].push_back(remap[w]);
    }
    return {std::move(h), std::move(remap)};
}

std::pair<Graph, std::vector<int>> induced_subgraph(const Graph &g, const std::vector<int> &verts) {
    std::vector<int> keep = verts;
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<int> remap(g.n, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<int>(i);
    Graph h(static_cast<int>(keep.size()));
    for (int v : keep)
        for (int w : g.adj[v])
            if (remap[w] >= 0) h.adj[remap[v]].push_back(remap[w]);
    return {std::move(h), std::move(remap)};
}

std::vector<std::vector<int>> components(const Graph &g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph &g) { return g.n <= 1 || components(g).size() == 1; }

bool is_acyclic(const Graph &g) {
    // A forest has n - #components edges.
    return g.edge_count() == g.n - static_cast<int>(components(g).size());
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

Graph cycle_graph(int n) {
    assert(n >= 3);
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, e);
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

Graph petersen_graph() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);          // outer cycle
        e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        e.emplace_back(i, 5 + i);                // spokes
    }
    return Graph::from_edges(10, e);
}

}  // namespace hitpack
