#include "hitpack/packing.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <set>
#include <unordered_map>

#include "hitpack/stats.hpp"

namespace hitpack {

namespace {

using Mask = std::uint64_t;

bool alive(Mask m, int v) { return (m >> v) & 1; }

// Chordless cycles through v, restricted to the alive mask. Each cycle is
// reported once, as the sequence v, x1, ..., xk with x1 < xk.
void chordless_cycles_through(const Graph &g, Mask m, int v,
                              std::vector<std::vector<int>> &out) {
    std::vector<int> path{v};
    std::vector<char> on_path(g.n, 0);
    on_path[v] = 1;

    auto adjacent_to_interior = [&](int y) {
        // Chord test against path interior x1..x_{j-1} (path[1..size-2]).
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            if (g.has_edge(y, path[i])) return true;
        return false;
    };

    auto dfs = [&](auto &&self, int last) -> void {
        for (int y : g.adj[last]) {
            if (!alive(m, y) || on_path[y]) continue;
            if (adjacent_to_interior(y)) continue;
            bool closes = g.has_edge(y, v);
            if (closes && path.size() >= 2) {
                if (path[1] < y) {  // canonical direction
                    std::vector<int> cyc = path;
                    cyc.push_back(y);
                    out.push_back(std::move(cyc));
                }
            }
            // Past the first step, an edge back to v would be a chord of any
            // longer cycle, so such a vertex may only close.
            if (!closes || path.size() == 1) {
                path.push_back(y);
                on_path[y] = 1;
                self(self, y);
                on_path[y] = 0;
                path.pop_back();
            }
        }
    };
    dfs(dfs, v);
}

void cliques_rec(const Graph &g, Mask m, int q, int from, std::vector<int> &cur,
                 std::vector<std::vector<int>> &out) {
    if (static_cast<int>(cur.size()) == q) {
        out.push_back(cur);
        return;
    }
    for (int v = from; v < g.n; ++v) {
        if (!alive(m, v)) continue;
        bool ok = true;
        for (int u : cur)
            if (!g.has_edge(u, v)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        cur.push_back(v);
        cliques_rec(g, m, q, v + 1, cur, out);
        cur.pop_back();
    }
}

// Injective homomorphisms of the pattern into g (alive part); collects the
// distinct image vertex sets.
void subgraph_copies(const Graph &g, Mask m, const Graph &h,
                     std::set<std::vector<int>> &images) {
    if (h.n == 0) return;
    // Order pattern vertices so each one after the first has an earlier neighbor
    // (h is connected).
    std::vector<int> order;
    std::vector<char> placed(h.n, 0);
    order.push_back(0);
    placed[0] = 1;
    while (static_cast<int>(order.size()) < h.n) {
        for (int a = 0; a < h.n; ++a) {
            if (placed[a]) continue;
            bool anchored = false;
            for (int b : h.adj[a]) anchored |= placed[b];
            if (anchored) {
                order.push_back(a);
                placed[a] = 1;
                break;
            }
        }
    }
    std::vector<int> img(h.n, -1);
    std::vector<char> used(g.n, 0);
    auto rec = [&](auto &&self, std::size_t idx) -> void {
        if (idx == order.size()) {
            std::vector<int> set;
            for (int x : img) set.push_back(x);
            std::sort(set.begin(), set.end());
            images.insert(std::move(set));
            return;
        }
        int a = order[idx];
        for (int v = 0; v < g.n; ++v) {
            if (!alive(m, v) || used[v]) continue;
            bool ok = true;
            for (int b : h.adj[a]) {
                if (img[b] >= 0 && !g.has_edge(v, img[b])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            img[a] = v;
            used[v] = 1;
            self(self, idx + 1);
            used[v] = 0;
            img[a] = -1;
        }
    };
    rec(rec, 0);
}

std::vector<std::vector<int>> copies_masked(const Graph &g, const ObjectFamily &family, Mask m,
                                            std::optional<int> through) {
    std::vector<std::vector<int>> out;
    if (family.is_edge_like()) {
        for (int u = 0; u < g.n; ++u) {
            if (!alive(m, u)) continue;
            for (int v : g.adj[u])
                if (v > u && alive(m, v)) out.push_back({u, v});
        }
    } else if (family.kind == ObjectFamily::Kind::Clique) {
        std::vector<int> cur;
        cliques_rec(g, m, family.q, 0, cur, out);
    } else if (family.kind == ObjectFamily::Kind::Subgraph) {
        std::set<std::vector<int>> images;
        subgraph_copies(g, m, family.pattern, images);
        out.assign(images.begin(), images.end());
    } else {  // Cycle
        assert(through.has_value() && "cycle copies require a through-vertex");
        chordless_cycles_through(g, m, *through, out);
    }
    if (through) {
        std::vector<std::vector<int>> filtered;
        for (auto &o : out)
            if (std::find(o.begin(), o.end(), *through) != o.end())
                filtered.push_back(std::move(o));
        out = std::move(filtered);
    }
    return out;
}

// The lowest-id alive vertex lying in some object, with the list of objects
// through it; nullopt when no object exists.
std::optional<std::pair<int, std::vector<std::vector<int>>>> pick_branch_vertex(
    const Graph &g, const ObjectFamily &family, Mask m) {
    if (family.kind == ObjectFamily::Kind::Cycle) {
        for (int v = 0; v < g.n; ++v) {
            if (!alive(m, v)) continue;
            auto objs = copies_masked(g, family, m, v);
            if (!objs.empty()) return std::make_pair(v, std::move(objs));
        }
        return std::nullopt;
    }
    auto all = copies_masked(g, family, m, std::nullopt);
    if (all.empty()) return std::nullopt;
    int best = g.n;
    for (const auto &o : all) best = std::min(best, *std::min_element(o.begin(), o.end()));
    std::vector<std::vector<int>> through;
    for (auto &o : all)
        if (std::find(o.begin(), o.end(), best) != o.end()) through.push_back(std::move(o));
    return std::make_pair(best, std::move(through));
}

void sort_branch_objects(std::vector<std::vector<int>> &objs) {
    // Shortest object first, then lexicographic on the sorted vertex set.
    std::sort(objs.begin(), objs.end(), [](const auto &a, const auto &b) {
        if (a.size() != b.size()) return a.size() < b.size();
        auto sa = a, sb = b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        return sa < sb;
    });
}

struct PackSearch {
    const Graph &g;
    const ObjectFamily &family;
    std::unordered_map<Mask, int> memo;

    int run(Mask m) {
        ++stats::branch_nodes;
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        auto picked = pick_branch_vertex(g, family, m);
        int best = 0;
        if (picked) {
            auto &[v, objs] = *picked;
            best = run(m & ~(Mask{1} << v));  // v stays uncovered
            sort_branch_objects(objs);
            for (const auto &o : objs) {
                Mask next = m;
                for (int x : o) next &= ~(Mask{1} << x);
                best = std::max(best, 1 + run(next));
            }
        }
        memo.emplace(m, best);
        return best;
    }

    // Early-exit search for `target` disjoint objects, collecting a witness.
    bool find(Mask m, int target, std::vector<std::vector<int>> &acc) {
        if (target == 0) return true;
        auto picked = pick_branch_vertex(g, family, m);
        if (!picked) return false;
        auto &[v, objs] = *picked;
        sort_branch_objects(objs);
        for (const auto &o : objs) {
            Mask next = m;
            for (int x : o) next &= ~(Mask{1} << x);
            acc.push_back(o);
            if (find(next, target - 1, acc)) return true;
            acc.pop_back();
        }
        return find(m & ~(Mask{1} << v), target, acc);
    }
};

Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

}  // namespace

std::vector<std::vector<int>> enumerate_copies(const Graph &g, const ObjectFamily &family,
                                               std::optional<int> through_vertex) {
    assert(g.n <= 64 && "oracle is desk scale");
    return copies_masked(g, family, full_mask(g.n), through_vertex);
}

int max_packing(const Graph &g, const ObjectFamily &family) {
    assert(g.n <= 64 && "oracle is desk scale");
    PackSearch s{g, family, {}};
    return s.run(full_mask(g.n));
}

std::optional<Packing> find_packing(const Graph &g, const ObjectFamily &family, int target) {
    assert(target >= 0);
    assert(g.n <= 64 && "oracle is desk scale");
    PackSearch s{g, family, {}};
    Packing p;
    if (s.find(full_mask(g.n), target, p.objects)) return p;
    return std::nullopt;
}

bool validate_packing(const Graph &g, const ObjectFamily &family, const Packing &p,
                      std::string *why) {
    auto fail = [&](const std::string &msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<char> used(g.n, 0);
    for (const auto &o : p.objects) {
        for (int v : o) {
            if (v < 0 || v >= g.n) return fail("vertex out of range");
            if (used[v]) return fail("objects share a vertex");
            used[v] = 1;
        }
        switch (family.kind) {
            case ObjectFamily::Kind::Edge:
                if (o.size() != 2 || !g.has_edge(o[0], o[1])) return fail("not an edge");
                break;
            case ObjectFamily::Kind::Clique:
                if (static_cast<int>(o.size()) != family.q) return fail("wrong clique size");
                for (std::size_t i = 0; i < o.size(); ++i)
                    for (std::size_t j = i + 1; j < o.size(); ++j)
                        if (!g.has_edge(o[i], o[j])) return fail("not a clique");
                break;
            case ObjectFamily::Kind::Subgraph: {
                auto [sub, remap] = induced_subgraph(g, o);
                std::set<std::vector<int>> images;
                subgraph_copies(sub, full_mask(sub.n), family.pattern, images);
                std::vector<int> want(sub.n);
                for (int i = 0; i < sub.n; ++i) want[i] = i;
                if (static_cast<int>(o.size()) != family.pattern.n || !images.count(want))
                    return fail("not a pattern copy");
                break;
            }
            case ObjectFamily::Kind::Cycle: {
                if (o.size() < 3) return fail("cycle too short");
                std::set<int> distinct(o.begin(), o.end());
                if (distinct.size() != o.size()) return fail("repeated vertex in cycle");
                for (std::size_t i = 0; i < o.size(); ++i)
                    if (!g.has_edge(o[i], o[(i + 1) % o.size()]))
                        return fail("missing cycle edge");
                break;
            }
        }
    }
    return true;
}

bool verify_solution(const Instance &inst, const std::vector<int> &s, std::string *why) {
    auto fail = [&](const std::string &msg) {
        if (why) *why = msg;
        return false;
    };
    std::set<int> distinct(s.begin(), s.end());
    if (distinct.size() != s.size()) return fail("repeated vertex in solution");
    if (static_cast<int>(s.size()) > inst.k) return fail("solution larger than k");
    for (int v : s) {
        if (v < 0 || v >= inst.graph.n) return fail("vertex out of range");
        if (inst.is_undeletable(v)) return fail("deletes an undeletable vertex");
    }
    auto [h, remap] = delete_vertices(inst.graph, s);
    (void)remap;
    if (max_packing(h, inst.family) >= inst.ell) return fail("residual packing still reaches l");
    return true;
}

Verdict brute_hitpack(const Instance &inst) {
    assert(inst.graph.n <= 64 && "oracle is desk scale");
    const auto deletable = inst.deletable_vertices();
    const int dn = static_cast<int>(deletable.size());
    // One search object so the packing memo is shared across deletion sets.
    PackSearch search{inst.graph, inst.family, {}};
    const Mask full = full_mask(inst.graph.n);
    std::vector<int> subset;
    // Subsets of the deletable set in increasing size, lexicographic within
    // a size.
    auto rec = [&](auto &&self, int from, int remaining) -> std::optional<std::vector<int>> {
        if (remaining == 0) {
            Mask m = full;
            for (int v : subset) m &= ~(Mask{1} << v);
            if (search.run(m) < inst.ell) return subset;
            return std::nullopt;
        }
        for (int i = from; i + remaining <= dn; ++i) {
            subset.push_back(deletable[i]);
            auto r = self(self, i + 1, remaining - 1);
            subset.pop_back();
            if (r) return r;
        }
        return std::nullopt;
    };
    for (int size = 0; size <= std::min(inst.k, dn); ++size) {
        if (auto s = rec(rec, 0, size)) return Verdict::yes_with(std::move(*s));
    }
    return Verdict::no();
}

}  // namespace hitpack
