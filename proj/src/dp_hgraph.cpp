#include "hitpack/dp_hgraph.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "hitpack/stats.hpp"

namespace hitpack {

namespace {

int part_min_image(const std::vector<int> &h) {
    int mn = std::numeric_limits<int>::max();
    for (int x : h)
        if (x >= 0) mn = std::min(mn, x);
    return mn;
}

}  // namespace

void HType::canonicalize() {
    std::sort(parts.begin(), parts.end(), [](const auto &a, const auto &b) {
        return part_min_image(a) < part_min_image(b);
    });
}

std::vector<HType> extend_type(const HType &t, const Graph &g, const Graph &h, int v, int part) {
    const int nh = h.n;
    std::vector<HType> out;
    if (part == 0) {
        out.push_back(t);
        return out;
    }
    if (part == static_cast<int>(t.parts.size()) + 1) {
        for (int a = 0; a < nh; ++a) {
            HType e = t;
            std::vector<int> fresh(nh, HType::kUp);
            fresh[a] = v;
            e.parts.push_back(std::move(fresh));
            e.canonicalize();
            out.push_back(std::move(e));
        }
        return out;
    }
    if (part < 1 || part > static_cast<int>(t.parts.size()))
        throw std::out_of_range("extend_type: part index out of range");
    const auto &ph = t.parts[part - 1];
    for (int a = 0; a < nh; ++a) {
        if (ph[a] != HType::kUp) continue;
        bool ok = true;
        for (int b : h.adj[a])
            if (ph[b] >= 0 && !g.has_edge(v, ph[b])) {
                ok = false;
                break;
            }
        if (!ok) continue;
        HType e = t;
        e.parts[part - 1][a] = v;
        e.canonicalize();
        out.push_back(std::move(e));
    }
    return out;
}

HType remove_type(const HType &t, int v) {
    for (std::size_t i = 0; i < t.parts.size(); ++i) {
        for (std::size_t a = 0; a < t.parts[i].size(); ++a) {
            if (t.parts[i][a] != v) continue;
            HType r = t;
            bool last_in_bag = true;
            for (std::size_t b = 0; b < r.parts[i].size(); ++b)
                if (b != a && r.parts[i][b] >= 0) last_in_bag = false;
            if (last_in_bag)
                r.parts.erase(r.parts.begin() + static_cast<long>(i));
            else
                r.parts[i][a] = HType::kDown;
            r.canonicalize();
            return r;
        }
    }
    return t;  // v uncovered: nothing to change
}

std::optional<HType> combine_types(const HType &t1, const HType &t2) {
    if (t1.parts.size() != t2.parts.size()) return std::nullopt;
    HType out;
    for (std::size_t i = 0; i < t1.parts.size(); ++i) {
        const auto &h1 = t1.parts[i];
        const auto &h2 = t2.parts[i];
        std::vector<int> h(h1.size());
        for (std::size_t a = 0; a < h1.size(); ++a) {
            if (h1[a] >= 0 || h2[a] >= 0) {
                if (h1[a] != h2[a]) return std::nullopt;  // bag images must agree
                h[a] = h1[a];
            } else if (h1[a] == HType::kDown && h2[a] == HType::kDown) {
                return std::nullopt;  // packed below on both sides
            } else if (h1[a] == HType::kDown || h2[a] == HType::kDown) {
                h[a] = HType::kDown;
            } else {
                h[a] = HType::kUp;
            }
        }
        out.parts.push_back(std::move(h));
    }
    out.canonicalize();
    return out;
}

namespace {

struct HEntry {
    int k0 = 0;
    std::vector<int> d0;
    int ell0 = 0;
    std::map<HType, int> f;  // finite values only; absent = no packing of that type
    std::uint64_t count = 0;
};

// Flat canonical encoding of an entry (the f map iterates in sorted order),
// hashable and cheap to compare.
std::vector<int> encode_entry(int k0, const std::vector<int> &d0, int ell0,
                              const std::map<HType, int> &f) {
    std::vector<int> out;
    out.push_back(k0);
    out.push_back(static_cast<int>(d0.size()));
    out.insert(out.end(), d0.begin(), d0.end());
    out.push_back(ell0);
    for (const auto &[t, val] : f) {
        out.push_back(-3);  // type separator (h values are >= -2)
        for (const auto &part : t.parts) {
            out.push_back(-4);
            out.insert(out.end(), part.begin(), part.end());
        }
        out.push_back(val);
    }
    return out;
}

struct VecHash {
    std::size_t operator()(const std::vector<int> &v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

class HgraphDp {
  public:
    HgraphDp(const Instance &inst, const NiceDecomposition &nd)
        : inst_(inst), nd_(nd), h_(inst.family.pattern), range_((nd.width() + 1) * h_.n) {}

    using Agg = std::unordered_map<std::vector<int>, std::size_t, VecHash>;

    HgraphResult run() {
        std::vector<std::vector<HEntry>> lists(nd_.nodes.size());
        for (int t : nd_.post_order()) {
            const NiceNode &node = nd_.nodes[t];
            Agg agg;
            std::vector<HEntry> staged;
            switch (node.kind) {
                case NiceNode::Kind::Leaf: {
                    HEntry e;
                    e.f.emplace(HType{}, 0);
                    e.count = 1;
                    aggregate(agg, staged, std::move(e));
                    break;
                }
                case NiceNode::Kind::IntroduceVertex:
                    for (const auto &e : lists[node.children[0]]) {
                        aggregate(agg, staged, intro_kept(e, node.v));
                        if (!inst_.is_undeletable(node.v))
                            aggregate(agg, staged, intro_deleted(e, node.v));
                    }
                    break;
                case NiceNode::Kind::Forget:
                    for (const auto &e : lists[node.children[0]]) {
                        if (std::binary_search(e.d0.begin(), e.d0.end(), node.v))
                            aggregate(agg, staged, forget_deleted(e, node.v));
                        else if (auto pe = forget_kept(e, node.v))
                            aggregate(agg, staged, std::move(*pe));
                    }
                    break;
                case NiceNode::Kind::Join:
                    for (const auto &e1 : lists[node.children[0]])
                        for (const auto &e2 : lists[node.children[1]]) {
                            if (e1.d0 != e2.d0) continue;
                            if (auto je = join(e1, e2)) aggregate(agg, staged, std::move(*je));
                        }
                    break;
                case NiceNode::Kind::IntroduceEdge:
                    throw std::invalid_argument(
                        "solve_hgraph_dp: decomposition must not contain introduce-edge nodes");
            }
            lists[t] = std::move(staged);
            for (int c : node.children) {
                lists[c].clear();
                lists[c].shrink_to_fit();
            }
        }

        HgraphResult res;
        for (const auto &e : lists[nd_.root]) res.count += e.count;
        res.verdict = res.count > 0 ? Verdict{true, std::nullopt} : Verdict::no();
        return res;
    }

  private:
    const Instance &inst_;
    const NiceDecomposition &nd_;
    const Graph &h_;
    int range_;

    void check_entry(const HEntry &e) const {
        bool has_zero = false;
        for (const auto &[t, val] : e.f) {
            assert(val >= 0 && val <= range_ && "f value outside {0..R}");
            has_zero |= (val == 0);
        }
        assert(has_zero && "f never attains 0");
        (void)has_zero;
    }

    void aggregate(Agg &agg, std::vector<HEntry> &staged, HEntry e) const {
        if (e.k0 > inst_.k) return;
        if (e.ell0 > inst_.ell - 1) return;  // completion below t only grows toward the root
        check_entry(e);
        auto [it, fresh] = agg.emplace(encode_entry(e.k0, e.d0, e.ell0, e.f), staged.size());
        if (fresh) {
            ++stats::dp_classes;
            staged.push_back(std::move(e));
        } else {
            staged[it->second].count += e.count;
        }
    }

    HEntry intro_deleted(const HEntry &e, int v) const {
        HEntry out = e;
        out.d0.insert(std::upper_bound(out.d0.begin(), out.d0.end(), v), v);
        return out;
    }

    HEntry intro_kept(const HEntry &e, int v) const {
        HEntry out;
        out.k0 = e.k0;
        out.d0 = e.d0;
        out.ell0 = e.ell0;
        out.count = e.count;
        for (const auto &[t, val] : e.f) {
            out.f.emplace(t, val);  // v uncovered
            const int w = static_cast<int>(t.parts.size());
            for (int part = 1; part <= w + 1; ++part) {
                for (auto &ext : extend_type(t, inst_.graph, h_, v, part)) {
                    if (part <= w && !liftable(t, ext, v)) continue;
                    auto [it, fresh] = out.f.emplace(std::move(ext), val);
                    if (!fresh) it->second = std::min(it->second, val);
                }
            }
        }
        return out;
    }

    // The vertex a placed at v must not have pattern neighbors already packed
    // strictly below the bag: such an edge could never be realized.
    bool liftable(const HType &child, const HType &ext, int v) const {
        for (const auto &part : ext.parts) {
            for (std::size_t a = 0; a < part.size(); ++a) {
                if (part[a] != v) continue;
                for (int b : h_.adj[static_cast<int>(a)])
                    if (part[b] == HType::kDown) return false;
                return true;
            }
        }
        (void)child;
        return true;
    }

    HEntry forget_deleted(const HEntry &e, int v) const {
        HEntry out = e;
        out.k0 += 1;
        out.d0.erase(std::find(out.d0.begin(), out.d0.end(), v));
        return out;
    }

    // Projects every child type to the parent (v leaves the bag), keeping for
    // each parent type the best completion; renormalizes so 0 is attained.
    std::optional<HEntry> forget_kept(const HEntry &e, int v) const {
        std::map<HType, int> g;
        for (const auto &[t, val] : e.f) {
            int delta = 0;
            if (auto proj = project(t, v, delta)) {
                auto [it, fresh] = g.emplace(std::move(*proj), val - delta);
                if (!fresh) it->second = std::min(it->second, val - delta);
            }
        }
        if (g.empty()) return std::nullopt;
        int m = std::numeric_limits<int>::max();
        for (const auto &[t, val] : g) m = std::min(m, val);
        HEntry out;
        out.k0 = e.k0;
        out.d0 = e.d0;
        out.ell0 = e.ell0 - m;
        assert(out.ell0 >= 0);
        out.count = e.count;
        for (auto &[t, val] : g) out.f.emplace(t, val - m);
        return out;
    }

    // Type of a child packing seen from the parent of a forget node; nullopt
    // when the packing cannot continue (an incomplete copy loses its last bag
    // vertex, or the dropped vertex has unpacked pattern neighbors). delta is
    // 1 when the copy completes.
    std::optional<HType> project(const HType &t, int v, int &delta) const {
        delta = 0;
        for (std::size_t i = 0; i < t.parts.size(); ++i) {
            const auto &part = t.parts[i];
            for (std::size_t a = 0; a < part.size(); ++a) {
                if (part[a] != v) continue;
                bool last_in_bag = true, has_up = false;
                for (std::size_t b = 0; b < part.size(); ++b) {
                    if (b != a && part[b] >= 0) last_in_bag = false;
                    if (b != a && part[b] == HType::kUp) has_up = true;
                }
                if (last_in_bag) {
                    if (has_up) return std::nullopt;  // bag-disjoint incomplete copy
                    HType r = t;
                    r.parts.erase(r.parts.begin() + static_cast<long>(i));
                    r.canonicalize();
                    delta = 1;  // copy completed
                    return r;
                }
                for (int b : h_.adj[static_cast<int>(a)])
                    if (part[b] == HType::kUp) return std::nullopt;  // border leaves the bag
                HType r = t;
                r.parts[i][a] = HType::kDown;
                r.canonicalize();
                return r;
            }
        }
        return t;  // v uncovered
    }

    std::optional<HEntry> join(const HEntry &e1, const HEntry &e2) const {
        std::map<HType, int> g;
        for (const auto &[t1, v1] : e1.f)
            for (const auto &[t2, v2] : e2.f) {
                if (auto c = combine_types(t1, t2)) {
                    auto [it, fresh] = g.emplace(std::move(*c), v1 + v2);
                    if (!fresh) it->second = std::min(it->second, v1 + v2);
                }
            }
        if (g.empty()) return std::nullopt;
        int m = std::numeric_limits<int>::max();
        for (const auto &[t, val] : g) m = std::min(m, val);
        HEntry out;
        out.k0 = e1.k0 + e2.k0;
        out.d0 = e1.d0;
        out.ell0 = e1.ell0 + e2.ell0 - m;
        out.count = e1.count * e2.count;
        for (auto &[t, val] : g) out.f.emplace(t, val - m);
        return out;
    }
};

}  // namespace

HgraphResult solve_hgraph_dp(const Instance &inst, const NiceDecomposition &nd) {
    if (inst.family.kind != ObjectFamily::Kind::Subgraph)
        throw std::invalid_argument("solve_hgraph_dp: family must be Subgraph");
    const Graph &h = inst.family.pattern;
    if (h.n < 2 || !is_connected(h))
        throw std::invalid_argument("solve_hgraph_dp: pattern must be connected with >= 2 vertices");
    if (h.n > 6 || nd.width() + 1 > 10 || inst.graph.n > 40)
        throw std::invalid_argument(
            "solve_hgraph_dp: instance beyond supported scale (pattern <= 6 vertices, "
            "bags <= 10, n <= 40)");
    if (inst.ell == 0) return {0, Verdict::no()};
    HgraphDp dp(inst, nd);
    return dp.run();
}

HgraphResult solve_hgraph_dp(const Instance &inst) {
    auto td = compute_decomposition(inst.graph);
    auto nd = make_nice(td, inst.graph, false);
    return solve_hgraph_dp(inst, nd);
}

}  // namespace hitpack
