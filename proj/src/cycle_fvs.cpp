#include "hitpack/cycle_fvs.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>

#include "hitpack/stats.hpp"
#include <set>
#include <stdexcept>

namespace hitpack {

long long erdos_posa_threshold(int k, int ell) {
    const long long p = static_cast<long long>(k) + ell;
    double lg = p >= 2 ? std::log2(static_cast<double>(p)) : 0.0;
    double lglg = p >= 2 && lg >= 1.0 ? std::log2(lg) : 0.0;
    if (lglg < 0.0) lglg = 0.0;
    long long head = static_cast<long long>(std::ceil(4.0 * p * (lg + lglg + 4.0)));
    return std::max<long long>(0, head + p - 1);
}

namespace {

using Mask = std::uint64_t;

// Iteratively strip degree-<=1 vertices inside the mask.
Mask prune_forest_leaves(const Graph &g, Mask m) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.n; ++v) {
            if (!((m >> v) & 1)) continue;
            int deg = 0;
            for (int w : g.adj[v]) deg += (m >> w) & 1;
            if (deg <= 1) {
                m &= ~(Mask{1} << v);
                changed = true;
            }
        }
    }
    return m;
}

// Shortest cycle inside the mask (as a vertex list), or empty.
std::vector<int> shortest_cycle(const Graph &g, Mask m) {
    std::vector<int> best;
    for (int s = 0; s < g.n; ++s) {
        if (!((m >> s) & 1)) continue;
        // BFS from s; the first non-tree edge closing back yields a cycle
        // through s of minimal length among cycles through s.
        std::vector<int> dist(g.n, -1), par(g.n, -1);
        std::queue<int> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : g.adj[v]) {
                if (!((m >> w) & 1)) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    par[w] = v;
                    q.push(w);
                } else if (w != par[v] && par[w] != v) {
                    // Walk both endpoints up to their meeting point.
                    std::vector<int> a{v}, b{w};
                    int x = v, y = w;
                    while (x != y) {
                        if (dist[x] >= dist[y]) {
                            x = par[x];
                            a.push_back(x);
                        } else {
                            y = par[y];
                            b.push_back(y);
                        }
                    }
                    std::vector<int> cyc = a;
                    for (int i = static_cast<int>(b.size()) - 2; i >= 0; --i)
                        cyc.push_back(b[i]);
                    if (best.empty() || cyc.size() < best.size()) best = cyc;
                }
            }
        }
    }
    return best;
}

bool fvs_search(const Graph &g, Mask m, int budget, std::vector<int> &acc) {
    m = prune_forest_leaves(g, m);
    std::vector<int> cyc = shortest_cycle(g, m);
    if (cyc.empty()) return true;
    if (budget == 0) return false;
    std::sort(cyc.begin(), cyc.end());
    for (int v : cyc) {
        acc.push_back(v);
        if (fvs_search(g, m & ~(Mask{1} << v), budget - 1, acc)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> compute_fvs(const Graph &g, int bound) {
    if (bound < 0) return std::nullopt;
    assert(g.n <= 64);
    Mask full = g.n >= 64 ? ~Mask{0} : ((Mask{1} << g.n) - 1);
    std::vector<int> acc;
    if (fvs_search(g, full, std::min(bound, g.n), acc)) {
        std::sort(acc.begin(), acc.end());
        return acc;
    }
    return std::nullopt;
}

std::optional<std::vector<int>> minimum_fvs(const Graph &g, int bound) {
    for (int b = 0; b <= std::min(bound, g.n); ++b)
        if (auto f = compute_fvs(g, b)) return f;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Step 2: degree reduction.

namespace {

long long upsilon_bound(int fvs_size, int k) {
    const long long f = fvs_size;
    return f * f * f + (k + 3) * f * f + (k + 2) * f;
}

long long gamma_bound(long long upsilon, int fvs_size, int k) {
    const long long base = upsilon * (2 * fvs_size + k) * (fvs_size + 3);
    return base * base;
}

}  // namespace

DegreeReduced reduce_degree(const Instance &inst_in, const std::vector<int> &fvs_in) {
    Instance inst = inst_in;
    std::vector<int> fvs = fvs_in;
    std::vector<int> ids(inst.graph.n);
    for (int v = 0; v < inst.graph.n; ++v) ids[v] = v;
    for (int i : fvs)
        if (!inst.is_undeletable(i))
            throw std::invalid_argument("reduce_degree: FVS must be undeletable");

    const long long upsilon = upsilon_bound(static_cast<int>(fvs.size()), inst.k);

    for (;;) {
        const Graph &g = inst.graph;
        auto in_fvs = [&](int v) { return std::binary_search(fvs.begin(), fvs.end(), v); };
        // Forest degree of each non-F vertex.
        int root = -1;
        for (int v = 0; v < g.n && root < 0; ++v) {
            if (in_fvs(v)) continue;
            long long deg = 0;
            for (int w : g.adj[v]) deg += !in_fvs(w);
            if (deg > upsilon) root = v;
        }
        if (root < 0) break;

        // Children subtrees of the forest tree rooted at `root`.
        std::vector<int> children;
        for (int w : g.adj[root])
            if (!in_fvs(w)) children.push_back(w);
        std::vector<std::vector<int>> subtree;  // vertices per child
        for (int c : children) {
            std::vector<int> verts;
            std::vector<int> stack{c};
            std::set<int> seen{root, c};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                verts.push_back(v);
                for (int w : g.adj[v])
                    if (!in_fvs(w) && !seen.count(w)) {
                        seen.insert(w);
                        stack.push_back(w);
                    }
            }
            subtree.push_back(std::move(verts));
        }

        // Per subtree and F vertex: how many N_i vertices it contains.
        const int nf = static_cast<int>(fvs.size());
        std::vector<std::vector<int>> hits(children.size(), std::vector<int>(nf, 0));
        for (std::size_t c = 0; c < children.size(); ++c)
            for (int v : subtree[c])
                for (int fi = 0; fi < nf; ++fi)
                    if (g.has_edge(v, fvs[fi])) ++hits[c][fi];

        const long long quota = inst.k + nf + 2;
        std::vector<char> marked(children.size(), 0);
        auto mark_phase = [&](auto &&qualifies) {
            long long unmarked_qualifying = 0;
            for (std::size_t c = 0; c < children.size(); ++c)
                if (!marked[c] && qualifies(c)) ++unmarked_qualifying;
            long long to_mark = std::min(quota, unmarked_qualifying);
            for (std::size_t c = 0; c < children.size() && to_mark > 0; ++c)
                if (!marked[c] && qualifies(c)) {
                    marked[c] = 1;
                    --to_mark;
                }
        };
        for (int fi = 0; fi < nf; ++fi)
            for (int fj = 0; fj < nf; ++fj)
                mark_phase([&](std::size_t c) {
                    if (fi == fj) return hits[c][fi] >= 2;  // an (N_i,N_i)-path needs 2 ends
                    return hits[c][fi] >= 1 && hits[c][fj] >= 1;
                });
        for (int fi = 0; fi < nf; ++fi)
            mark_phase([&](std::size_t c) { return hits[c][fi] >= 1; });

        // Delete the lowest-id leaf of the first unmarked subtree.
        int doomed = -1;
        for (std::size_t c = 0; c < children.size() && doomed < 0; ++c) {
            if (marked[c]) continue;
            int leaf = -1;
            for (int v : subtree[c]) {
                int deg = 0;
                for (int w : g.adj[v]) deg += !in_fvs(w);
                bool is_leaf = (v == children[c]) ? deg <= 1 : deg == 1;
                if (is_leaf && (leaf < 0 || v < leaf)) leaf = v;
            }
            doomed = leaf;
        }
        assert(doomed >= 0 && "unmarked subtree must exist at a high-degree root");

        auto [h, remap] = delete_vertices(inst.graph, {doomed});
        Instance next;
        next.graph = std::move(h);
        for (int v : inst.undeletable)
            if (remap[v] >= 0) next.undeletable.push_back(remap[v]);
        std::sort(next.undeletable.begin(), next.undeletable.end());
        next.k = inst.k;
        next.ell = inst.ell;
        next.family = inst.family;
        std::vector<int> fvs2, ids2(next.graph.n);
        for (int v : fvs) fvs2.push_back(remap[v]);
        for (int v = 0; v < inst.graph.n; ++v)
            if (remap[v] >= 0) ids2[remap[v]] = ids[v];
        inst = std::move(next);
        fvs = std::move(fvs2);
        ids = std::move(ids2);
    }
    return {std::move(inst), std::move(fvs), std::move(ids)};
}

// ---------------------------------------------------------------------------
// Step 3: usable paths.

namespace {

// Vertex set of G^{i,j}: prune forest leaves outside N_i u N_j.
std::vector<char> pruned_forest(const Graph &forest, const std::vector<char> &keep_set) {
    std::vector<char> in(forest.n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < forest.n; ++v) {
            if (!in[v] || keep_set[v]) continue;
            int deg = 0;
            for (int w : forest.adj[v]) deg += in[w];
            if (deg <= 1) {
                in[v] = 0;
                changed = true;
            }
        }
    }
    return in;
}

// Unique path between u and v in a forest, or empty when disconnected.
std::vector<int> forest_path(const Graph &forest, int u, int v) {
    if (u == v) return {u};
    std::vector<int> par(forest.n, -2);
    std::queue<int> q;
    par[u] = -1;
    q.push(u);
    while (!q.empty() && par[v] == -2) {
        int x = q.front();
        q.pop();
        for (int w : forest.adj[x])
            if (par[w] == -2) {
                par[w] = x;
                q.push(w);
            }
    }
    if (par[v] == -2) return {};
    std::vector<int> path;
    for (int x = v; x != -1; x = par[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

bool is_usable(const FvsContext &ctx, const UsablePath &p) {
    const Graph &forest = ctx.forest;
    auto fpos = [&](int fv) {
        return static_cast<int>(std::lower_bound(ctx.fvs.begin(), ctx.fvs.end(), fv) -
                                ctx.fvs.begin());
    };
    const auto &ni = ctx.nbr[fpos(p.i)];
    const auto &nj = ctx.nbr[fpos(p.j)];
    auto in_ni = [&](int v) { return std::binary_search(ni.begin(), ni.end(), v); };
    auto in_nj = [&](int v) { return std::binary_search(nj.begin(), nj.end(), v); };
    if (p.verts.empty()) return false;
    int u = p.verts.front(), v = p.verts.back();
    if (!in_ni(u) || !in_nj(v)) return false;
    if (p.i == p.j && u == v) return false;  // an (N_i,N_i)-path needs two ends

    // Condition (i): contained in G^{i,j}.
    std::vector<char> keep(forest.n, 0);
    for (int x : ni) keep[x] = 1;
    for (int x : nj) keep[x] = 1;
    std::vector<char> in_gij = pruned_forest(forest, keep);
    for (int x : p.verts)
        if (!in_gij[x]) return false;

    // Condition (ii): minimality. Internal vertices avoid N_i u N_j, and for
    // a multi-vertex path the endpoints may not qualify for the "wrong" side.
    for (std::size_t t = 1; t + 1 < p.verts.size(); ++t)
        if (in_ni(p.verts[t]) || in_nj(p.verts[t])) return false;
    if (p.verts.size() >= 2) {
        if (p.i != p.j && (in_nj(u) || in_ni(v))) return false;
    }

    // Condition (iii): few high-degree internal vertices in G^{i,j}.
    long long heavy = 0;
    for (std::size_t t = 1; t + 1 < p.verts.size(); ++t) {
        int deg = 0;
        for (int w : forest.adj[p.verts[t]]) deg += in_gij[w];
        heavy += deg >= 3;
    }
    return heavy <= static_cast<long long>(ctx.fvs.size()) + 1;
}

FvsContext build_fvs_context(const Instance &inst, const std::vector<int> &fvs) {
    FvsContext ctx;
    ctx.inst = inst;
    ctx.fvs = fvs;
    std::sort(ctx.fvs.begin(), ctx.fvs.end());
    auto [forest, tofo] = delete_vertices(inst.graph, ctx.fvs);
    ctx.forest = std::move(forest);
    ctx.to_forest = std::move(tofo);
    ctx.from_forest.assign(ctx.forest.n, -1);
    for (int v = 0; v < inst.graph.n; ++v)
        if (ctx.to_forest[v] >= 0) ctx.from_forest[ctx.to_forest[v]] = v;
    for (int i : ctx.fvs) {
        std::vector<int> ni;
        for (int w : inst.graph.adj[i])
            if (ctx.to_forest[w] >= 0) ni.push_back(ctx.to_forest[w]);
        std::sort(ni.begin(), ni.end());
        ctx.nbr.push_back(std::move(ni));
    }
    ctx.upsilon = upsilon_bound(static_cast<int>(ctx.fvs.size()), inst.k);
    ctx.gamma = gamma_bound(ctx.upsilon, static_cast<int>(ctx.fvs.size()), inst.k);

    // Enumerate all usable paths, once per anchor pair i <= j.
    const int nf = static_cast<int>(ctx.fvs.size());
    for (int a = 0; a < nf; ++a) {
        for (int b = a; b < nf; ++b) {
            std::vector<char> keep(ctx.forest.n, 0);
            for (int x : ctx.nbr[a]) keep[x] = 1;
            for (int x : ctx.nbr[b]) keep[x] = 1;
            std::vector<char> in_gij = pruned_forest(ctx.forest, keep);
            for (int u : ctx.nbr[a]) {
                if (!in_gij[u]) continue;
                for (int v : ctx.nbr[b]) {
                    if (!in_gij[v]) continue;
                    if (a == b && v <= u) continue;  // canonical for same-anchor pairs
                    if (a != b && u == v) {
                        UsablePath p{ctx.fvs[a], ctx.fvs[b], {u}};
                        if (is_usable(ctx, p)) ctx.paths.push_back(std::move(p));
                        continue;
                    }
                    if (u == v) continue;
                    auto path = forest_path(ctx.forest, u, v);
                    if (path.empty()) continue;
                    UsablePath p{ctx.fvs[a], ctx.fvs[b], std::move(path)};
                    if (is_usable(ctx, p)) ctx.paths.push_back(std::move(p));
                }
            }
        }
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// Disjoint path selection on forests (the CoverPath dynamic program).

namespace {

struct DisjointPathDp {
    const Graph &forest;
    const std::vector<std::vector<std::vector<int>>> &collections;
    int f;
    std::vector<int> parent, depth, comp_of;
    std::vector<std::vector<int>> kids;
    std::vector<int> roots;
    // paths_at_top[v]: (collection, path index) pairs whose topmost vertex is v.
    std::vector<std::vector<std::pair<int, int>>> paths_at_top;
    std::map<std::pair<int, int>, char> memo_t;  // T[v,I]

    DisjointPathDp(const Graph &fo, const std::vector<std::vector<std::vector<int>>> &co)
        : forest(fo), collections(co), f(static_cast<int>(co.size())) {
        parent.assign(fo.n, -1);
        depth.assign(fo.n, -1);
        comp_of.assign(fo.n, -1);
        kids.assign(fo.n, {});
        paths_at_top.assign(fo.n, {});
        for (int s = 0; s < fo.n; ++s) {
            if (depth[s] >= 0) continue;
            roots.push_back(s);
            depth[s] = 0;
            comp_of[s] = static_cast<int>(roots.size()) - 1;
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : fo.adj[v])
                    if (depth[w] < 0) {
                        depth[w] = depth[v] + 1;
                        parent[w] = v;
                        comp_of[w] = comp_of[s];
                        kids[v].push_back(w);
                        stack.push_back(w);
                    }
            }
        }
        for (int c = 0; c < f; ++c)
            for (std::size_t pi = 0; pi < collections[c].size(); ++pi) {
                const auto &path = collections[c][pi];
                int top = path[0];
                for (int v : path)
                    if (depth[v] < depth[top]) top = v;
                paths_at_top[top].emplace_back(c, static_cast<int>(pi));
            }
    }

    // Cover set I with disjoint paths inside the subtrees rooted at `roots_`.
    bool cover_roots(const std::vector<int> &roots_, int set) {
        if (set == 0) return true;
        // Sequential subset DP over the roots.
        std::vector<char> reach(1 << f, 0);
        reach[0] = 1;
        for (int r : roots_) {
            std::vector<char> next = reach;
            for (int s = 0; s < (1 << f); ++s) {
                if (!reach[s]) continue;
                int rest = set & ~s;
                for (int add = rest; add; add = (add - 1) & rest)
                    if (!next[s | add] && tree(r, add)) next[s | add] = 1;
            }
            reach = std::move(next);
            if (reach[set]) return true;
        }
        return reach[set];
    }

    // T[v, I]: I coverable inside the subtree of v.
    bool tree(int v, int set) {
        if (set == 0) return true;
        auto key = std::make_pair(v, set);
        auto it = memo_t.find(key);
        if (it != memo_t.end()) return it->second;
        bool ok = cover_roots(kids[v], set);
        for (auto [c, pi] : paths_at_top[v]) {
            if (ok) break;
            if (!((set >> c) & 1)) continue;
            ok = cover_path_rest(v, c, pi, set & ~(1 << c));
        }
        memo_t[key] = ok;
        return ok;
    }

    // Subtrees of H_v hanging off the path (children of path vertices that
    // are not on the path themselves).
    std::vector<int> hanging(int /*v*/, const std::vector<int> &path) const {
        std::set<int> on(path.begin(), path.end());
        std::vector<int> roots_;
        for (int p : path)
            for (int c : kids[p])
                if (!on.count(c)) roots_.push_back(c);
        return roots_;
    }

    bool cover_path_rest(int v, int c, int pi, int rest) {
        return cover_roots(hanging(v, collections[c][pi]), rest);
    }

    // Witness recovery, mirroring the boolean tables.
    bool recover_roots(const std::vector<int> &roots_, int set, std::vector<int> &out) {
        if (set == 0) return true;
        // Recurse over the first root that takes a nonempty piece.
        for (std::size_t idx = 0; idx < roots_.size(); ++idx) {
            std::vector<int> tail(roots_.begin() + static_cast<long>(idx) + 1, roots_.end());
            for (int piece = set; piece; piece = (piece - 1) & set) {
                if (!tree(roots_[idx], piece)) continue;
                if (!cover_roots(tail, set & ~piece)) continue;
                return recover_tree(roots_[idx], piece, out) &&
                       recover_roots(tail, set & ~piece, out);
            }
        }
        return false;
    }

    bool recover_tree(int v, int set, std::vector<int> &out) {
        if (set == 0) return true;
        if (cover_roots(kids[v], set)) return recover_roots(kids[v], set, out);
        for (auto [c, pi] : paths_at_top[v]) {
            if (!((set >> c) & 1)) continue;
            if (cover_path_rest(v, c, pi, set & ~(1 << c))) {
                out[c] = pi;
                return recover_roots(hanging(v, collections[c][pi]), set & ~(1 << c), out);
            }
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> find_disjoint_path_indices(
    const Graph &forest, const std::vector<std::vector<std::vector<int>>> &collections) {
    assert(is_acyclic(forest));
    const int f = static_cast<int>(collections.size());
    if (f > 20) throw std::invalid_argument("find_disjoint_paths: too many collections");
    for (const auto &col : collections)
        for (const auto &p : col) {
            assert(!p.empty());
            for (std::size_t t = 0; t + 1 < p.size(); ++t)
                assert(forest.has_edge(p[t], p[t + 1]) && "path edge not in forest");
        }
    DisjointPathDp dp(forest, collections);
    const int all = (1 << f) - 1;
    if (!dp.cover_roots(dp.roots, all)) return std::nullopt;
    std::vector<int> picked(f, -1);
    bool ok = dp.recover_roots(dp.roots, all, picked);
    assert(ok);
    (void)ok;
    return picked;
}

std::optional<std::vector<std::vector<int>>> find_disjoint_paths(
    const Graph &forest, const std::vector<std::vector<std::vector<int>>> &collections) {
    auto picked = find_disjoint_path_indices(forest, collections);
    if (!picked) return std::nullopt;
    std::vector<std::vector<int>> out;
    for (std::size_t c = 0; c < collections.size(); ++c) {
        assert((*picked)[c] >= 0);
        out.push_back(collections[c][(*picked)[c]]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Step 4 helper: usable cycle packings via annotated cycle structures.

namespace {

// One annotated cycle over F positions: verts[t] connects to verts[t+1 mod r]
// by a forest path (conn_is_path[t]) or a direct F-F edge.
struct AnnotatedCycle {
    std::vector<int> verts;
    std::vector<char> conn_is_path;
};

using CycleStructure = std::vector<AnnotatedCycle>;

// Enumerates cycle structures with exactly `want` cycles over the F
// positions (unused positions stay parked), in canonical form: each cycle
// starts at its minimum position and cycles are ordered by their minima.
// Symbol feasibility is pre-filtered: edges must exist between the F
// vertices, path slots need at least one available path for the anchor pair,
// single-vertex cycles close by a path only, and a two-vertex cycle cannot
// use its F-F edge twice.
void enumerate_structures(const FvsContext &ctx, int want,
                          const std::vector<char> &pair_feasible,
                          const std::function<bool(const CycleStructure &)> &visit) {
    const int nf = static_cast<int>(ctx.fvs.size());
    std::vector<char> used(nf, 0);
    CycleStructure cur;

    auto fvpos_edge = [&](int a, int b) {
        return ctx.inst.graph.has_edge(ctx.fvs[a], ctx.fvs[b]);
    };
    auto pairkey = [&](int a, int b) { return std::min(a, b) * nf + std::max(a, b); };

    std::function<bool(int, int)> next_cycle = [&](int remaining, int min_start) -> bool {
        if (remaining == 0) return visit(cur);
        for (int s = min_start; s < nf; ++s) {
            if (used[s]) continue;
            used[s] = 1;
            AnnotatedCycle cyc{{s}, {}};
            // The cycle under construction lives here; it is copied into
            // `cur` only around the recursion into the next cycle.
            auto recurse_with = [&](bool path_closing) -> bool {
                cyc.conn_is_path.push_back(path_closing ? 1 : 0);
                cur.push_back(cyc);
                bool found = next_cycle(remaining - 1, cyc.verts[0] + 1);
                cur.pop_back();
                cyc.conn_is_path.pop_back();
                return found;
            };
            std::function<bool(void)> grow = [&]() -> bool {
                const int first = cyc.verts[0], last = cyc.verts.back();
                // Option A: close the cycle now.
                if (cyc.verts.size() == 1) {
                    if (pair_feasible[pairkey(first, first)] && recurse_with(true)) return true;
                } else {
                    bool double_edge = cyc.verts.size() == 2 && !cyc.conn_is_path[0];
                    if (fvpos_edge(last, first) && !double_edge && recurse_with(false))
                        return true;
                    if (pair_feasible[pairkey(last, first)] && recurse_with(true)) return true;
                }
                // Option B: extend by another position (all above the start).
                for (int v = first + 1; v < nf; ++v) {
                    if (used[v]) continue;
                    for (int sym = 0; sym < 2; ++sym) {
                        bool path = sym == 1;
                        if (!path && !fvpos_edge(last, v)) continue;
                        if (path && !pair_feasible[pairkey(last, v)]) continue;
                        used[v] = 1;
                        cyc.verts.push_back(v);
                        cyc.conn_is_path.push_back(path ? 1 : 0);
                        bool found = grow();
                        cyc.conn_is_path.pop_back();
                        cyc.verts.pop_back();
                        used[v] = 0;
                        if (found) return true;
                    }
                }
                return false;
            };
            bool found = grow();
            used[s] = 0;
            if (found) return true;
        }
        return false;
    };
    next_cycle(want, 0);
}

}  // namespace

std::optional<UsableCyclePacking> find_usable_packing(const FvsContext &ctx,
                                                      const std::vector<int> &avail, int ell) {
    if (ell == 0) return UsableCyclePacking{};
    const int nf = static_cast<int>(ctx.fvs.size());
    if (nf == 0) return std::nullopt;  // an acyclic graph packs no cycle

    auto fpos = [&](int fv) {
        return static_cast<int>(std::lower_bound(ctx.fvs.begin(), ctx.fvs.end(), fv) -
                                ctx.fvs.begin());
    };
    // Available paths per anchor-position pair.
    std::vector<std::vector<int>> by_pair(nf * nf);
    for (int idx : avail) {
        const auto &p = ctx.paths[idx];
        int a = fpos(p.i), b = fpos(p.j);
        by_pair[std::min(a, b) * nf + std::max(a, b)].push_back(idx);
    }
    std::vector<char> pair_feasible(nf * nf, 0);
    for (int key = 0; key < nf * nf; ++key) pair_feasible[key] = !by_pair[key].empty();

    std::optional<UsableCyclePacking> result;
    auto visit = [&](const CycleStructure &st) -> bool {
        // Path slots in a fixed scan order.
        struct Slot {
            int from, to;
        };
        std::vector<Slot> slots;
        for (const auto &cyc : st)
            for (std::size_t t = 0; t < cyc.verts.size(); ++t)
                if (cyc.conn_is_path[t])
                    slots.push_back(
                        {cyc.verts[t], cyc.verts[(t + 1) % cyc.verts.size()]});

        std::vector<std::vector<std::vector<int>>> collections;
        std::vector<const std::vector<int> *> slot_candidates;
        for (const auto &slot : slots) {
            int key = std::min(slot.from, slot.to) * nf + std::max(slot.from, slot.to);
            std::vector<std::vector<int>> col;
            for (int idx : by_pair[key]) col.push_back(ctx.paths[idx].verts);
            if (col.empty()) return false;
            collections.push_back(std::move(col));
            slot_candidates.push_back(&by_pair[key]);
        }
        auto picked = find_disjoint_path_indices(ctx.forest, collections);
        if (!picked) return false;

        UsableCyclePacking ucp;
        for (std::size_t s = 0; s < picked->size(); ++s)
            ucp.used_paths.push_back((*slot_candidates[s])[(*picked)[s]]);

        // Assemble the cycles in graph coordinates.
        std::size_t slot_at = 0;
        for (const auto &cyc : st) {
            std::vector<int> seq;
            for (std::size_t t = 0; t < cyc.verts.size(); ++t) {
                seq.push_back(ctx.fvs[cyc.verts[t]]);
                if (!cyc.conn_is_path[t]) continue;
                int from_v = ctx.fvs[cyc.verts[t]];
                int to_v = ctx.fvs[cyc.verts[(t + 1) % cyc.verts.size()]];
                std::vector<int> oriented = ctx.paths[ucp.used_paths[slot_at]].verts;
                ++slot_at;
                auto fits = [&](const std::vector<int> &path) {
                    return ctx.inst.graph.has_edge(ctx.from_forest[path.front()], from_v) &&
                           ctx.inst.graph.has_edge(ctx.from_forest[path.back()], to_v);
                };
                if (!fits(oriented)) {
                    std::reverse(oriented.begin(), oriented.end());
                    assert(fits(oriented));
                }
                for (int x : oriented) seq.push_back(ctx.from_forest[x]);
            }
            ucp.packing.objects.push_back(std::move(seq));
        }
        std::string why;
        bool valid = validate_packing(ctx.inst.graph, ObjectFamily::cycle(), ucp.packing, &why);
        assert(valid && "assembled usable packing must validate");
        if (!valid) return false;
        result = std::move(ucp);
        return true;
    };
    enumerate_structures(ctx, ell, pair_feasible, visit);
    return result;
}

// ---------------------------------------------------------------------------
// Step 5: hitting paths on a forest.

std::optional<std::vector<int>> hit_paths_on_forest(const Graph &forest,
                                                    const std::vector<int> &undeletable,
                                                    const std::vector<std::vector<int>> &paths,
                                                    int k) {
    assert(is_acyclic(forest));
    // Root every tree at its lowest vertex.
    std::vector<int> depth(forest.n, -1);
    for (int s = 0; s < forest.n; ++s) {
        if (depth[s] >= 0) continue;
        depth[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : forest.adj[v])
                if (depth[w] < 0) {
                    depth[w] = depth[v] + 1;
                    stack.push_back(w);
                }
        }
    }
    auto in_u = [&](int v) {
        return std::binary_search(undeletable.begin(), undeletable.end(), v);
    };

    std::function<std::optional<std::vector<int>>(std::vector<std::vector<int>>, int)> rec =
        [&](std::vector<std::vector<int>> live, int budget) -> std::optional<std::vector<int>> {
        if (live.empty()) return std::vector<int>{};
        if (budget <= 0) return std::nullopt;
        // Deepest top vertex first.
        std::size_t pick = 0;
        int best_depth = -1;
        for (std::size_t i = 0; i < live.size(); ++i) {
            int top = live[i][0];
            for (int v : live[i])
                if (depth[v] < depth[top]) top = v;
            if (depth[top] > best_depth) {
                best_depth = depth[top];
                pick = i;
            }
        }
        const auto &path = live[pick];
        int top_pos = 0;
        for (std::size_t t = 0; t < path.size(); ++t)
            if (depth[path[t]] < depth[path[top_pos]]) top_pos = static_cast<int>(t);
        // Candidate hitters: first deletable vertex from the top toward each end.
        std::vector<int> candidates;
        for (int t = top_pos; t >= 0; --t)
            if (!in_u(path[t])) {
                candidates.push_back(path[t]);
                break;
            }
        for (std::size_t t = top_pos; t < path.size(); ++t)
            if (!in_u(path[t])) {
                if (candidates.empty() || candidates[0] != path[t])
                    candidates.push_back(path[t]);
                break;
            }
        for (int x : candidates) {
            std::vector<std::vector<int>> rest;
            for (const auto &p : live)
                if (std::find(p.begin(), p.end(), x) == p.end()) rest.push_back(p);
            if (auto sub = rec(std::move(rest), budget - 1)) {
                sub->push_back(x);
                std::sort(sub->begin(), sub->end());
                return sub;
            }
        }
        return std::nullopt;
    };
    return rec(paths, std::max(k, 0));
}

// ---------------------------------------------------------------------------
// Step 4 + 5 search and the full pipeline.

namespace {

struct CandidateSearch {
    const FvsContext &ctx;
    int ell;
    int k;
    long long depth_cap;
    bool interleave_hitting;                   // prune unhittable subtrees, stop at first hit
    std::vector<CandidatePair> promising;      // filled when not interleaved
    std::optional<std::vector<int>> solution;  // forest coordinates
    std::set<std::vector<int>> visited;        // hit sets already expanded

    void run() {
        std::vector<int> all;
        for (std::size_t i = 0; i < ctx.paths.size(); ++i) all.push_back(static_cast<int>(i));
        explore(all, {}, 0);
    }

    std::vector<std::vector<int>> hit_verts(const std::vector<int> &hit) const {
        std::vector<std::vector<int>> out;
        for (int idx : hit) out.push_back(ctx.paths[idx].verts);
        return out;
    }

    bool explore(const std::vector<int> &avail, const std::vector<int> &hit, long long depth) {
        assert(depth <= depth_cap && "branching beyond the depth cap");
        ++stats::branch_nodes;
        if (solution) return true;
        if (!visited.insert(hit).second) return false;

        std::optional<std::vector<int>> hitter;
        if (interleave_hitting) {
            std::vector<int> undel_forest;
            for (int v = 0; v < ctx.forest.n; ++v)
                if (ctx.inst.is_undeletable(ctx.from_forest[v])) undel_forest.push_back(v);
            hitter = hit_paths_on_forest(ctx.forest, undel_forest, hit_verts(hit), k);
            if (!hitter) return false;  // no descendant can be hittable either
        }
        auto packing = find_usable_packing(ctx, avail, ell);
        if (!packing) {
            // Promising candidate.
            if (interleave_hitting) {
                solution = hitter;
                return true;
            }
            promising.push_back({avail, hit});
            return false;
        }
        if (depth >= depth_cap) return false;  // second stopping criterion
        for (int idx : packing->used_paths) {
            std::vector<int> avail2;
            for (int x : avail)
                if (x != idx) avail2.push_back(x);
            std::vector<int> hit2 = hit;
            hit2.insert(std::upper_bound(hit2.begin(), hit2.end(), idx), idx);
            if (explore(avail2, hit2, depth + 1)) return true;
        }
        return false;
    }
};

}  // namespace

std::vector<CandidatePair> get_candidates(const FvsContext &ctx, int ell, int k) {
    CandidateSearch cs{ctx,
                       ell,
                       k,
                       static_cast<long long>(ctx.fvs.size() * ctx.fvs.size()) * k * ctx.gamma,
                       false,
                       {},
                       std::nullopt,
                       {}};
    cs.run();
    return cs.promising;
}

Verdict solve_cycle_fvs(const Instance &inst) {
    if (inst.family.kind != ObjectFamily::Kind::Cycle)
        throw std::invalid_argument("solve_cycle_fvs: family must be Cycle");
    if (inst.ell == 0) return Verdict::no();

    // Step 0: an FVS of size <= k* or a guaranteed large cycle packing.
    long long kstar = erdos_posa_threshold(inst.k, inst.ell);
    auto fvs0 = minimum_fvs(inst.graph, static_cast<int>(std::min<long long>(kstar, inst.graph.n)));
    if (!fvs0) return Verdict::no();  // k+l disjoint cycles exist

    // Step 1: guess the deletable FVS part.
    std::vector<int> fvs_deletable;
    for (int v : *fvs0)
        if (!inst.is_undeletable(v)) fvs_deletable.push_back(v);
    const int dn = static_cast<int>(fvs_deletable.size());

    std::vector<int> pick;
    auto try_subset = [&](const std::vector<int> &fprime) -> std::optional<std::vector<int>> {
        auto [g1, remap] = delete_vertices(inst.graph, fprime);
        Instance sub;
        sub.graph = std::move(g1);
        sub.k = inst.k - static_cast<int>(fprime.size());
        sub.ell = inst.ell;
        sub.family = inst.family;
        std::vector<int> fvs1;
        for (int v : *fvs0)
            if (remap[v] >= 0) fvs1.push_back(remap[v]);
        std::sort(fvs1.begin(), fvs1.end());
        // The remaining FVS becomes undeletable.
        std::set<int> undel;
        for (int v : inst.undeletable)
            if (remap[v] >= 0) undel.insert(remap[v]);
        for (int v : fvs1) undel.insert(v);
        sub.undeletable.assign(undel.begin(), undel.end());
        std::vector<int> ids(sub.graph.n);
        for (int v = 0; v < inst.graph.n; ++v)
            if (remap[v] >= 0) ids[remap[v]] = v;

        // Step 2: degree reduction.
        DegreeReduced red = reduce_degree(sub, fvs1);
        std::vector<int> ids2(red.inst.graph.n);
        for (int v = 0; v < red.inst.graph.n; ++v) ids2[v] = ids[red.ids[v]];

        // Steps 3-5.
        FvsContext ctx = build_fvs_context(red.inst, red.fvs);
        CandidateSearch cs{ctx,
                           red.inst.ell,
                           red.inst.k,
                           static_cast<long long>(ctx.fvs.size() * ctx.fvs.size()) *
                               red.inst.k * ctx.gamma,
                           true,
                           {},
                           std::nullopt,
                           {}};
        cs.run();
        if (!cs.solution) return std::nullopt;
        std::vector<int> witness = fprime;
        for (int x : *cs.solution) witness.push_back(ids2[ctx.from_forest[x]]);
        return witness;
    };

    // Subsets of the deletable FVS vertices in increasing size.
    for (int size = 0; size <= std::min(inst.k, dn); ++size) {
        std::vector<int> idxs;
        std::function<std::optional<std::vector<int>>(int, int)> rec =
            [&](int from, int remaining) -> std::optional<std::vector<int>> {
            if (remaining == 0) {
                std::vector<int> fprime;
                for (int i : idxs) fprime.push_back(fvs_deletable[i]);
                return try_subset(fprime);
            }
            for (int i = from; i + remaining <= dn; ++i) {
                idxs.push_back(i);
                auto r = rec(i + 1, remaining - 1);
                idxs.pop_back();
                if (r) return r;
            }
            return std::nullopt;
        };
        if (auto w = rec(0, size)) return Verdict::yes_with(std::move(*w));
    }
    return Verdict::no();
}

}  // namespace hitpack
