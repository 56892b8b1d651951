#include "hitpack/matching.hpp"

#include <cassert>
#include <queue>

namespace hitpack {

std::vector<int> Matching::mate(int n) const {
    std::vector<int> m(n, -1);
    for (auto [u, v] : edges) {
        m[u] = v;
        m[v] = u;
    }
    return m;
}

bool is_valid_matching(const Graph &g, const Matching &m) {
    std::vector<char> used(g.n, 0);
    for (auto [u, v] : m.edges) {
        if (!g.has_edge(u, v)) return false;
        if (used[u] || used[v]) return false;
        used[u] = used[v] = 1;
    }
    return true;
}

namespace {

// Classic array-based blossom search. One instance per host graph; `mate`
// holds the current matching and find_path grows an alternating tree from
// `root`, contracting blossoms on the way.
struct BlossomSearch {
    const Graph &g;
    std::vector<int> mate, parent, base;
    std::vector<char> used, blossom;

    explicit BlossomSearch(const Graph &g_) : g(g_), mate(g_.n, -1) {}

    int lowest_common_ancestor(int a, int b) {
        std::vector<char> seen(g.n, 0);
        for (;;) {
            a = base[a];
            seen[a] = 1;
            if (mate[a] == -1) break;
            a = parent[mate[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b]) return b;
            b = parent[mate[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = 1;
            blossom[base[mate[v]]] = 1;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    // Returns an unsaturated vertex reachable from root by an alternating
    // path (the far end of an augmenting path), or -1.
    int find_path(int root) {
        used.assign(g.n, 0);
        parent.assign(g.n, -1);
        base.resize(g.n);
        for (int i = 0; i < g.n; ++i) base[i] = i;

        used[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : g.adj[v]) {
                if (base[v] == base[to] || mate[v] == to) continue;
                if (to == root || (mate[to] != -1 && parent[mate[to]] != -1)) {
                    // Odd cycle: contract the blossom.
                    int b = lowest_common_ancestor(v, to);
                    blossom.assign(g.n, 0);
                    mark_path(v, b, to);
                    mark_path(to, b, v);
                    for (int i = 0; i < g.n; ++i) {
                        if (blossom[base[i]]) {
                            base[i] = b;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push(i);
                            }
                        }
                    }
                } else if (parent[to] == -1) {
                    parent[to] = v;
                    if (mate[to] == -1) return to;
                    used[mate[to]] = 1;
                    q.push(mate[to]);
                }
            }
        }
        return -1;
    }

    // Vertex sequence from `finish` back to the tree root, alternating
    // non-matching / matching edges.
    std::vector<int> extract_path(int finish) const {
        std::vector<int> seq;
        int v = finish;
        while (v != -1) {
            int pv = parent[v];
            seq.push_back(v);
            seq.push_back(pv);
            v = mate[pv];
        }
        return seq;
    }

    void augment(const std::vector<int> &seq) {
        for (std::size_t i = 0; i + 1 < seq.size(); i += 2) {
            mate[seq[i]] = seq[i + 1];
            mate[seq[i + 1]] = seq[i];
        }
    }
};

Matching matching_from_mate(const std::vector<int> &mate) {
    Matching m;
    for (int v = 0; v < static_cast<int>(mate.size()); ++v)
        if (mate[v] > v) m.edges.emplace_back(v, mate[v]);
    return m;
}

}  // namespace

Matching maximum_matching(const Graph &g) {
    BlossomSearch bs(g);
    // Greedy warm start, lowest ids first.
    for (int v = 0; v < g.n; ++v) {
        if (bs.mate[v] != -1) continue;
        for (int w : g.adj[v]) {
            if (bs.mate[w] == -1) {
                bs.mate[v] = w;
                bs.mate[w] = v;
                break;
            }
        }
    }
    for (int v = 0; v < g.n; ++v) {
        if (bs.mate[v] != -1) continue;
        int finish = bs.find_path(v);
        if (finish != -1) bs.augment(bs.extract_path(finish));
    }
    return matching_from_mate(bs.mate);
}

int matching_number(const Graph &g) { return maximum_matching(g).size(); }

std::optional<std::vector<int>> find_augmenting_path(const Graph &g, const Matching &m) {
    assert(is_valid_matching(g, m));
    BlossomSearch bs(g);
    bs.mate = m.mate(g.n);
    for (int v = 0; v < g.n; ++v) {
        if (bs.mate[v] != -1) continue;
        int finish = bs.find_path(v);
        if (finish != -1) {
            std::vector<int> seq = bs.extract_path(finish);
            std::reverse(seq.begin(), seq.end());  // root first
            return seq;
        }
    }
    return std::nullopt;
}

}  // namespace hitpack
