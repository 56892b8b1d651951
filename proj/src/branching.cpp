#include "hitpack/branching.hpp"

#include <cassert>
#include <set>
#include <stdexcept>

#include "hitpack/matching.hpp"
#include "hitpack/stats.hpp"
#include "hitpack/packing.hpp"

namespace hitpack {

namespace {

// State carries original-id bookkeeping: the graph shrinks while deletions
// are reported in input coordinates.
struct EdgeBranch {
    int ell;
    int max_depth;  // k + l; the measure k+l+1-nu(G[U]) drops by one per branch

    std::optional<std::vector<int>> solve(const Graph &g, std::vector<int> undel, int k,
                                          const std::vector<int> &orig_ids,
                                          std::vector<int> deleted, int depth) {
        assert(depth <= max_depth && "branch depth exceeds k+l");
        ++stats::branch_nodes;
        if (k < 0) return std::nullopt;
        if (matching_number(g) < ell) return deleted;

        auto [gu, remap] = induced_subgraph(g, undel);
        Matching mu = maximum_matching(gu);
        if (mu.size() >= ell) return std::nullopt;

        // Lift the matching on G[U] back to G and look for an augmenting path.
        Matching m;
        for (auto [a, b] : mu.edges) {
            int u = undel[a], v = undel[b];
            m.edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(m.edges.begin(), m.edges.end());
        auto path = find_augmenting_path(g, m);
        if (!path) return deleted;  // m is maximum in G, so nu(G) = nu(G[U]) < ell

        int u = path->front(), v = path->back();
        if (u > v) std::swap(u, v);
        bool u_del = !std::binary_search(undel.begin(), undel.end(), u);
        bool v_del = !std::binary_search(undel.begin(), undel.end(), v);
        assert((u_del || v_del) && "augmenting path endpoints both undeletable");

        // Deletion branches first, lowest endpoint first.
        for (int x : {u, v}) {
            bool deletable = (x == u) ? u_del : v_del;
            if (!deletable) continue;
            auto [h, remap2] = delete_vertices(g, {x});
            std::vector<int> undel2, ids2(h.n);
            for (int w : undel)
                if (remap2[w] >= 0) undel2.push_back(remap2[w]);
            for (int w = 0; w < g.n; ++w)
                if (remap2[w] >= 0) ids2[remap2[w]] = orig_ids[w];
            auto del2 = deleted;
            del2.push_back(orig_ids[x]);
            if (auto r = solve(h, std::move(undel2), k - 1, ids2, std::move(del2), depth + 1))
                return r;
        }
        // Make both endpoints undeletable.
        std::vector<int> undel3 = undel;
        for (int x : {u, v})
            if (!std::binary_search(undel3.begin(), undel3.end(), x)) {
                undel3.insert(std::upper_bound(undel3.begin(), undel3.end(), x), x);
            }
        return solve(g, std::move(undel3), k, orig_ids, std::move(deleted), depth + 1);
    }
};

}  // namespace

Verdict solve_edge_branch(const Instance &inst) {
    if (!inst.family.is_edge_like())
        throw std::invalid_argument("solve_edge_branch: family must be Edge or Clique(2)");
    if (inst.ell == 0) return Verdict::no();  // the empty packing always exists

    std::vector<int> ids(inst.graph.n);
    for (int v = 0; v < inst.graph.n; ++v) ids[v] = v;
    EdgeBranch eb{inst.ell, inst.k + inst.ell};
    if (auto s = eb.solve(inst.graph, inst.undeletable, inst.k, ids, {}, 0))
        return Verdict::yes_with(std::move(*s));
    return Verdict::no();
}

namespace {

struct HBranch {
    const ObjectFamily &family;
    int ell;

    std::optional<std::vector<int>> solve(const Graph &g, const std::vector<int> &undel, int k,
                                          const std::vector<int> &orig_ids,
                                          std::vector<int> deleted) {
        ++stats::branch_nodes;
        auto packing = find_packing(g, family, ell);
        if (!packing) return deleted;
        if (k == 0) return std::nullopt;

        std::set<int> covered;
        for (const auto &o : packing->objects) covered.insert(o.begin(), o.end());
        for (int x : covered) {
            if (std::binary_search(undel.begin(), undel.end(), x)) continue;
            auto [h, remap] = delete_vertices(g, {x});
            std::vector<int> undel2, ids2(h.n);
            for (int w : undel)
                if (remap[w] >= 0) undel2.push_back(remap[w]);
            for (int w = 0; w < g.n; ++w)
                if (remap[w] >= 0) ids2[remap[w]] = orig_ids[w];
            auto del2 = deleted;
            del2.push_back(orig_ids[x]);
            if (auto r = solve(h, undel2, k - 1, ids2, std::move(del2))) return r;
        }
        return std::nullopt;  // packing covers no deletable vertex, or all branches fail
    }
};

}  // namespace

Verdict solve_h_branch(const Instance &inst) {
    if (inst.family.kind != ObjectFamily::Kind::Clique &&
        inst.family.kind != ObjectFamily::Kind::Subgraph)
        throw std::invalid_argument("solve_h_branch: family must be Clique or Subgraph");
    if (inst.family.kind == ObjectFamily::Kind::Subgraph && inst.family.pattern.n < 2)
        throw std::invalid_argument("solve_h_branch: pattern must have at least 2 vertices");
    if (inst.ell == 0) return Verdict::no();

    std::vector<int> ids(inst.graph.n);
    for (int v = 0; v < inst.graph.n; ++v) ids[v] = v;
    HBranch hb{inst.family, inst.ell};
    if (auto s = hb.solve(inst.graph, inst.undeletable, inst.k, ids, {}))
        return Verdict::yes_with(std::move(*s));
    return Verdict::no();
}

}  // namespace hitpack
