#include "hitpack/dp_clique.hpp"

#include <cassert>
#include <map>
#include <stdexcept>

#include "hitpack/stats.hpp"

namespace hitpack {

namespace {

std::vector<int> bag_rest(const std::vector<int> &bag, const std::vector<int> &d0) {
    std::vector<int> rest;
    std::set_difference(bag.begin(), bag.end(), d0.begin(), d0.end(), std::back_inserter(rest));
    return rest;
}

int index_of(const std::vector<int> &sorted, int v) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

void check_invariants(const CliqueClass &c, int rest_size) {
    assert(static_cast<int>(c.f.size()) == (1 << rest_size));
    int lo = c.f[0], hi = c.f[0];
    for (int x : c.f) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    assert(hi == c.f[0] && "f(empty) must be the maximum");
    assert(hi - lo <= rest_size && "image spread exceeds bag size");
    (void)lo;
    (void)hi;
    (void)rest_size;
}

// All q-cliques of g inside `rest` containing v, as masks over rest indices.
std::vector<int> cliques_through(const Graph &g, const std::vector<int> &rest, int v, int q) {
    std::vector<int> out, cur{v};
    int vi = index_of(rest, v);
    auto rec = [&](auto &&self, int from, int mask) -> void {
        if (static_cast<int>(cur.size()) == q) {
            out.push_back(mask);
            return;
        }
        for (int i = from; i < static_cast<int>(rest.size()); ++i) {
            int w = rest[i];
            if (w == v) continue;
            bool ok = true;
            for (int u : cur)
                if (!g.has_edge(u, w)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(w);
            self(self, i + 1, mask | (1 << i));
            cur.pop_back();
        }
    };
    rec(rec, 0, 1 << vi);
    return out;
}

}  // namespace

CliqueClass clique_intro(const CliqueClass &c, const Graph &g, const std::vector<int> &bag,
                         int v, bool deleted, int q) {
    CliqueClass out;
    out.repr = c.repr;
    if (deleted) {
        out.k0 = c.k0;
        out.d0 = c.d0;
        out.d0.insert(std::upper_bound(out.d0.begin(), out.d0.end(), v), v);
        out.f = c.f;
        out.repr.push_back(v);
        check_invariants(out, static_cast<int>(bag_rest(bag, out.d0).size()));
        return out;
    }
    out.k0 = c.k0;
    out.d0 = c.d0;
    std::vector<int> rest = bag_rest(bag, out.d0);  // includes v
    const int m = static_cast<int>(rest.size());
    const int vi = index_of(rest, v);
    // Parent subset rank -> child rank: remove the bit at position vi.
    auto drop = [&](int parent_mask) {
        int low = parent_mask & ((1 << vi) - 1);
        int high = parent_mask >> (vi + 1);
        return low | (high << vi);
    };
    const auto cliques = cliques_through(g, rest, v, q);
    out.f.assign(std::size_t{1} << m, 0);
    for (int a = 0; a < (1 << m); ++a) {
        if (a & (1 << vi)) {
            out.f[a] = c.f[drop(a)];
        } else {
            int best = c.f[drop(a)];
            for (int cm : cliques)
                if ((cm & a) == 0) best = std::max(best, 1 + c.f[drop((a | cm) & ~(1 << vi))]);
            out.f[a] = best;
        }
    }
    check_invariants(out, m);
    return out;
}

CliqueClass clique_forget(const CliqueClass &c, const std::vector<int> &child_bag, int v,
                          bool was_deleted) {
    CliqueClass out;
    out.repr = c.repr;
    if (was_deleted) {
        out.k0 = c.k0 + 1;
        out.d0 = c.d0;
        out.d0.erase(std::find(out.d0.begin(), out.d0.end(), v));
        out.f = c.f;
        return out;
    }
    out.k0 = c.k0;
    out.d0 = c.d0;
    std::vector<int> child_rest = bag_rest(child_bag, c.d0);  // includes v
    const int m = static_cast<int>(child_rest.size());
    const int vi = index_of(child_rest, v);
    out.f.assign(std::size_t{1} << (m - 1), 0);
    for (int a = 0; a < (1 << m); ++a) {
        if (a & (1 << vi)) continue;
        int low = a & ((1 << vi) - 1);
        int high = a >> (vi + 1);
        out.f[low | (high << vi)] = c.f[a];
    }
    check_invariants(out, m - 1);
    return out;
}

CliqueClass clique_join(const CliqueClass &c1, const CliqueClass &c2,
                        const std::vector<int> &bag) {
    if (c1.d0 != c2.d0) throw std::invalid_argument("clique_join: mismatched deleted sets");
    CliqueClass out;
    out.k0 = c1.k0 + c2.k0;
    out.d0 = c1.d0;
    out.repr = c1.repr;
    out.repr.insert(out.repr.end(), c2.repr.begin(), c2.repr.end());
    std::sort(out.repr.begin(), out.repr.end());
    out.repr.erase(std::unique(out.repr.begin(), out.repr.end()), out.repr.end());
    const int m = static_cast<int>(bag_rest(bag, out.d0).size());
    const int full = (1 << m) - 1;
    out.f.assign(std::size_t{1} << m, 0);
    for (int a = 0; a <= full; ++a) {
        int comp = full & ~a;
        int best = 0;
        // All partitions A1 (+) A2 of the complement of A.
        for (int a1 = comp;; a1 = (a1 - 1) & comp) {
            best = std::max(best, c1.f[a | a1] + c2.f[a | (comp & ~a1)]);
            if (a1 == 0) break;
        }
        out.f[a] = best;
    }
    check_invariants(out, m);
    return out;
}

namespace {

struct ClassKey {
    int k0;
    std::vector<int> d0;
    std::vector<int> f;
    bool operator<(const ClassKey &o) const {
        return std::tie(k0, d0, f) < std::tie(o.k0, o.d0, o.f);
    }
};

}  // namespace

Verdict solve_clique_dp(const Instance &inst, const NiceDecomposition &nd) {
    int q;
    if (inst.family.kind == ObjectFamily::Kind::Clique)
        q = inst.family.q;
    else if (inst.family.kind == ObjectFamily::Kind::Edge)
        q = 2;
    else
        throw std::invalid_argument("solve_clique_dp: family must be Clique or Edge");
    if (inst.ell == 0) return Verdict::no();

    const Graph &g = inst.graph;
    std::vector<std::vector<CliqueClass>> lists(nd.nodes.size());

    auto push = [&](std::vector<CliqueClass> &list, std::map<ClassKey, bool> &seen,
                    CliqueClass c) {
        if (c.k0 > inst.k) return;           // budget exceeded below the bag
        if (c.f[0] >= inst.ell) return;      // packing number can only grow above
        ClassKey key{c.k0, c.d0, c.f};
        if (seen.emplace(std::move(key), true).second) {
            ++stats::dp_classes;
            list.push_back(std::move(c));
        }
    };

    for (int t : nd.post_order()) {
        const NiceNode &node = nd.nodes[t];
        std::map<ClassKey, bool> seen;
        auto &out = lists[t];
        switch (node.kind) {
            case NiceNode::Kind::Leaf:
                out.push_back(CliqueClass{0, {}, {0}, {}});
                break;
            case NiceNode::Kind::IntroduceVertex: {
                for (const auto &c : lists[node.children[0]]) {
                    push(out, seen, clique_intro(c, g, node.bag, node.v, false, q));
                    if (!inst.is_undeletable(node.v))
                        push(out, seen, clique_intro(c, g, node.bag, node.v, true, q));
                }
                break;
            }
            case NiceNode::Kind::Forget: {
                for (const auto &c : lists[node.children[0]]) {
                    bool was_deleted = std::binary_search(c.d0.begin(), c.d0.end(), node.v);
                    push(out, seen,
                         clique_forget(c, nd.nodes[node.children[0]].bag, node.v, was_deleted));
                }
                break;
            }
            case NiceNode::Kind::Join: {
                for (const auto &c1 : lists[node.children[0]])
                    for (const auto &c2 : lists[node.children[1]]) {
                        if (c1.d0 != c2.d0) continue;
                        push(out, seen, clique_join(c1, c2, node.bag));
                    }
                break;
            }
            case NiceNode::Kind::IntroduceEdge:
                throw std::invalid_argument(
                    "solve_clique_dp: decomposition must not contain introduce-edge nodes");
        }
        for (int c : node.children) {
            lists[c].clear();
            lists[c].shrink_to_fit();
        }
    }

    // Surviving root classes already satisfy k0 <= k and f(empty) <= l-1.
    for (const auto &c : lists[nd.root])
        return Verdict::yes_with(c.repr);
    return Verdict::no();
}

Verdict solve_clique_dp(const Instance &inst) {
    auto td = compute_decomposition(inst.graph);
    auto nd = make_nice(td, inst.graph, false);
    return solve_clique_dp(inst, nd);
}

}  // namespace hitpack
