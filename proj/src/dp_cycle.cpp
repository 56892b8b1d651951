#include "hitpack/dp_cycle.hpp"

#include <cassert>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "hitpack/stats.hpp"

namespace hitpack {

namespace {

// Sentinels ordered above every finite completion offset: kLow marks types
// whose packings are hopelessly behind (the paper's "suboptimal" mark), and
// absence from the map means no packing of that type exists at all.
constexpr int kLow = std::numeric_limits<int>::max() / 2;

std::pair<int, int> ordered_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

bool contains(const std::vector<int> &sorted, int v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

void insert_sorted(std::vector<int> &sorted, int v) {
    sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), v), v);
}

void erase_sorted(std::vector<int> &sorted, int v) {
    sorted.erase(std::find(sorted.begin(), sorted.end(), v));
}

int partner_of(const CycleType &t, int v) {
    for (auto [a, b] : t.m) {
        if (a == v) return b;
        if (b == v) return a;
    }
    return -1;
}

void replace_pair(std::vector<std::pair<int, int>> &m, std::pair<int, int> from,
                  std::pair<int, int> to) {
    m.erase(std::find(m.begin(), m.end(), from));
    m.push_back(ordered_pair(to.first, to.second));
    std::sort(m.begin(), m.end());
}

}  // namespace

std::pair<std::vector<std::pair<int, int>>, int> reduce_matching(
    std::vector<std::pair<int, int>> m, int lambda) {
    for (;;) {
        // Find a vertex with two incident pairs.
        int hub = -1;
        std::pair<int, int> p1, p2;
        for (std::size_t i = 0; i < m.size() && hub < 0; ++i)
            for (std::size_t j = i + 1; j < m.size() && hub < 0; ++j) {
                for (int v : {m[i].first, m[i].second})
                    if (v == m[j].first || v == m[j].second) {
                        hub = v;
                        p1 = m[i];
                        p2 = m[j];
                        break;
                    }
            }
        if (hub < 0) return {std::move(m), lambda};
        int u = p1.first == hub ? p1.second : p1.first;
        int w = p2.first == hub ? p2.second : p2.first;
        auto uw = ordered_pair(u, w);
        m.erase(std::find(m.begin(), m.end(), p1));
        m.erase(std::find(m.begin(), m.end(), p2));
        auto it = std::find(m.begin(), m.end(), uw);
        if (it != m.end()) {
            // The merged segment closes a cycle with the existing u-w segment.
            m.erase(it);
            ++lambda;
        } else {
            m.push_back(uw);
            std::sort(m.begin(), m.end());
        }
    }
}

std::optional<std::pair<CycleType, int>> combine_cycle_types(const CycleType &t1,
                                                             const CycleType &t2) {
    for (int v : t1.y2)
        if (!contains(t2.y0, v)) return std::nullopt;
    for (int v : t2.y2)
        if (!contains(t1.y0, v)) return std::nullopt;

    CycleType out;
    for (int v : t1.y0)
        if (contains(t2.y0, v)) out.y0.push_back(v);
    for (int v : t1.y1)
        if (contains(t2.y0, v)) out.y1.push_back(v);
    for (int v : t2.y1)
        if (contains(t1.y0, v)) out.y1.push_back(v);
    std::sort(out.y1.begin(), out.y1.end());
    out.y2 = t1.y2;
    for (int v : t2.y2) insert_sorted(out.y2, v);
    for (int v : t1.y1)
        if (contains(t2.y1, v)) insert_sorted(out.y2, v);

    std::vector<std::pair<int, int>> sym;
    int shared = 0;
    for (auto p : t1.m) {
        if (std::find(t2.m.begin(), t2.m.end(), p) != t2.m.end())
            ++shared;
        else
            sym.push_back(p);
    }
    for (auto p : t2.m)
        if (std::find(t1.m.begin(), t1.m.end(), p) == t1.m.end()) sym.push_back(p);
    std::sort(sym.begin(), sym.end());
    auto [m, lambda] = reduce_matching(std::move(sym), shared);
    out.m = std::move(m);

    // Sanity: the reduced pairs must exactly cover the new degree-1 set.
    std::vector<int> covered;
    for (auto [a, b] : out.m) {
        covered.push_back(a);
        covered.push_back(b);
    }
    std::sort(covered.begin(), covered.end());
    assert(covered == out.y1 && "reduced matching must pair the new endpoints");
    return std::make_pair(std::move(out), lambda);
}

namespace {

struct CycleEntry {
    int k0 = 0;
    std::vector<int> d0;
    int ell0 = 0;
    std::map<CycleType, int> f;  // finite offsets and kLow; absent = no packing
    std::vector<int> repr;
};

std::vector<int> encode_entry(int k0, const std::vector<int> &d0, int ell0,
                              const std::map<CycleType, int> &f) {
    std::vector<int> out;
    out.push_back(k0);
    out.push_back(static_cast<int>(d0.size()));
    out.insert(out.end(), d0.begin(), d0.end());
    out.push_back(ell0);
    for (const auto &[t, val] : f) {
        out.push_back(-1);
        out.insert(out.end(), t.y0.begin(), t.y0.end());
        out.push_back(-2);
        out.insert(out.end(), t.y1.begin(), t.y1.end());
        out.push_back(-3);
        out.insert(out.end(), t.y2.begin(), t.y2.end());
        out.push_back(-4);
        for (auto [a, b] : t.m) {
            out.push_back(a);
            out.push_back(b);
        }
        out.push_back(-5);
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

class CycleDp {
  public:
    CycleDp(const Instance &inst, const NiceDecomposition &nd)
        : inst_(inst), nd_(nd), cap_(2 * (nd.width() + 1)) {}

    using Agg = std::unordered_map<std::vector<int>, std::size_t, VecHash>;

    Verdict run() {
        std::vector<std::vector<CycleEntry>> lists(nd_.nodes.size());
        for (int t : nd_.post_order()) {
            const NiceNode &node = nd_.nodes[t];
            Agg agg;
            std::vector<CycleEntry> staged;
            switch (node.kind) {
                case NiceNode::Kind::Leaf: {
                    CycleEntry e;
                    e.f.emplace(CycleType{}, 0);
                    aggregate(agg, staged, std::move(e));
                    break;
                }
                case NiceNode::Kind::IntroduceVertex:
                    for (const auto &e : lists[node.children[0]]) {
                        aggregate(agg, staged, intro_vertex(e, node.v, false));
                        if (!inst_.is_undeletable(node.v))
                            aggregate(agg, staged, intro_vertex(e, node.v, true));
                    }
                    break;
                case NiceNode::Kind::IntroduceEdge:
                    for (const auto &e : lists[node.children[0]]) {
                        if (contains(e.d0, node.u) || contains(e.d0, node.v))
                            aggregate(agg, staged, e);
                        else
                            aggregate(agg, staged, intro_edge(e, node.u, node.v));
                    }
                    break;
                case NiceNode::Kind::Forget:
                    for (const auto &e : lists[node.children[0]]) {
                        if (contains(e.d0, node.v))
                            aggregate(agg, staged, forget_deleted(e, node.v));
                        else
                            aggregate(agg, staged, forget_kept(e, node.v));
                    }
                    break;
                case NiceNode::Kind::Join:
                    for (const auto &e1 : lists[node.children[0]])
                        for (const auto &e2 : lists[node.children[1]]) {
                            if (e1.d0 != e2.d0) continue;
                            aggregate(agg, staged, join(e1, e2));
                        }
                    break;
            }
            lists[t] = std::move(staged);
            for (int c : node.children) {
                lists[c].clear();
                lists[c].shrink_to_fit();
            }
        }

        // Every surviving root entry has the empty type at offset 0 with
        // ell0 <= l-1 and k0 <= k.
        for (const auto &e : lists[nd_.root]) {
            auto it = e.f.find(CycleType{});
            assert(it != e.f.end() && it->second == 0);
            (void)it;
            return Verdict::yes_with(e.repr);
        }
        return Verdict::no();
    }

  private:
    const Instance &inst_;
    const NiceDecomposition &nd_;
    int cap_;  // value range cap 2(tw+1)

    void check_entry(const CycleEntry &e) const {
        bool has_zero = false;
        for (const auto &[t, val] : e.f) {
            assert((val == kLow || (val >= 0 && val <= cap_)) && "offset out of range");
            has_zero |= (val == 0);
        }
        assert(has_zero && "f never attains 0");
        (void)has_zero;
    }

    void aggregate(Agg &agg, std::vector<CycleEntry> &staged, CycleEntry e) const {
        if (e.k0 > inst_.k) return;
        if (e.ell0 > inst_.ell - 1) return;  // completion only grows toward the root
        check_entry(e);
        auto [it, fresh] = agg.emplace(encode_entry(e.k0, e.d0, e.ell0, e.f), staged.size());
        (void)it;
        if (fresh) {
            ++stats::dp_classes;
            staged.push_back(std::move(e));  // first representative kept
        }
    }

    CycleEntry intro_vertex(const CycleEntry &e, int v, bool deleted) const {
        CycleEntry out;
        out.k0 = e.k0;
        out.d0 = e.d0;
        out.ell0 = e.ell0;
        out.repr = e.repr;
        if (deleted) {
            insert_sorted(out.d0, v);
            // A vertex may be introduced (and deleted) in both subtrees of a
            // join; keep the representative sorted so the merge deduplicates.
            if (!contains(out.repr, v)) insert_sorted(out.repr, v);
        }
        for (const auto &[t, val] : e.f) {
            CycleType nt = t;
            insert_sorted(nt.y0, v);
            out.f.emplace(std::move(nt), val);
        }
        return out;
    }

    // The five edge cases: unused / new path / extend a path (two sides) /
    // connect two paths / close a cycle. Aggregation keeps the best offset
    // per resulting type; closing a cycle shifts the whole entry by one.
    CycleEntry intro_edge(const CycleEntry &e, int u, int v) const {
        std::map<CycleType, int> g;
        auto put = [&g](CycleType t, int val) {
            auto [it, fresh] = g.emplace(std::move(t), val);
            if (!fresh) it->second = std::min(it->second, val);
        };
        for (const auto &[t, val] : e.f) {
            put(t, val);  // Case 0: edge unused
            bool u0 = contains(t.y0, u), v0 = contains(t.y0, v);
            bool u1 = contains(t.y1, u), v1 = contains(t.y1, v);
            if (u0 && v0) {  // Case 1: new path
                CycleType nt = t;
                erase_sorted(nt.y0, u);
                erase_sorted(nt.y0, v);
                insert_sorted(nt.y1, u);
                insert_sorted(nt.y1, v);
                nt.m.push_back(ordered_pair(u, v));
                std::sort(nt.m.begin(), nt.m.end());
                put(std::move(nt), val);
            }
            if (u0 && v1) put(extend_path(t, u, v), val);  // Case 2a
            if (u1 && v0) put(extend_path(t, v, u), val);  // Case 2b
            if (u1 && v1) {
                int x = partner_of(t, u), y = partner_of(t, v);
                if (y == u) {  // Case 4: close a cycle
                    CycleType nt = t;
                    erase_sorted(nt.y1, u);
                    erase_sorted(nt.y1, v);
                    insert_sorted(nt.y2, u);
                    insert_sorted(nt.y2, v);
                    nt.m.erase(std::find(nt.m.begin(), nt.m.end(), ordered_pair(u, v)));
                    put(std::move(nt), val == kLow ? kLow : val - 1);
                } else {  // Case 3: connect two paths
                    CycleType nt = t;
                    erase_sorted(nt.y1, u);
                    erase_sorted(nt.y1, v);
                    insert_sorted(nt.y2, u);
                    insert_sorted(nt.y2, v);
                    nt.m.erase(std::find(nt.m.begin(), nt.m.end(), ordered_pair(x, u)));
                    replace_pair(nt.m, ordered_pair(y, v), {x, y});
                    put(std::move(nt), val);
                }
            }
        }
        CycleEntry out;
        out.k0 = e.k0;
        out.d0 = e.d0;
        out.repr = e.repr;
        bool shifted = false;
        for (const auto &[t, val] : g)
            if (val == -1) shifted = true;
        out.ell0 = e.ell0 + (shifted ? 1 : 0);
        for (auto &[t, val] : g) {
            if (val == kLow)
                out.f.emplace(t, kLow);
            else if (!shifted)
                out.f.emplace(t, val);
            else if (val == cap_)
                out.f.emplace(t, kLow);  // would overflow the range: mark low
            else
                out.f.emplace(t, val + 1);
        }
        return out;
    }

    CycleType extend_path(const CycleType &t, int newcomer, int old_end) const {
        CycleType nt = t;
        int y = partner_of(t, old_end);
        erase_sorted(nt.y0, newcomer);
        erase_sorted(nt.y1, old_end);
        insert_sorted(nt.y1, newcomer);
        insert_sorted(nt.y2, old_end);
        replace_pair(nt.m, ordered_pair(old_end, y), {newcomer, y});
        return nt;
    }

    CycleEntry forget_deleted(const CycleEntry &e, int v) const {
        CycleEntry out;
        out.k0 = e.k0 + 1;
        out.d0 = e.d0;
        erase_sorted(out.d0, v);
        out.ell0 = e.ell0;
        out.repr = e.repr;
        for (const auto &[t, val] : e.f) {
            CycleType nt = t;
            erase_sorted(nt.y0, v);
            out.f.emplace(std::move(nt), val);
        }
        return out;
    }

    CycleEntry forget_kept(const CycleEntry &e, int v) const {
        std::map<CycleType, int> g;
        for (const auto &[t, val] : e.f) {
            if (contains(t.y1, v)) continue;  // a dangling endpoint cannot close anymore
            CycleType nt = t;
            if (contains(nt.y0, v))
                erase_sorted(nt.y0, v);
            else
                erase_sorted(nt.y2, v);
            auto [it, fresh] = g.emplace(std::move(nt), val);
            if (!fresh) it->second = std::min(it->second, val);
        }
        assert(!g.empty());
        int m = kLow;
        for (const auto &[t, val] : g) m = std::min(m, val);
        CycleEntry out;
        out.k0 = e.k0;
        out.d0 = e.d0;
        out.ell0 = e.ell0 - m;
        out.repr = e.repr;
        assert(m != kLow && out.ell0 >= 0);
        for (auto &[t, val] : g) out.f.emplace(t, val == kLow ? kLow : val - m);
        return out;
    }

    CycleEntry join(const CycleEntry &e1, const CycleEntry &e2) const {
        // Work in completion space: comp = (l1 - f1) + (l2 - f2) + lambda.
        std::map<CycleType, long> comp;
        constexpr long kCompLow = std::numeric_limits<long>::min() / 2;
        for (const auto &[t1, v1] : e1.f)
            for (const auto &[t2, v2] : e2.f) {
                auto c = combine_cycle_types(t1, t2);
                if (!c) continue;
                long value = (v1 == kLow || v2 == kLow)
                                 ? kCompLow
                                 : static_cast<long>(e1.ell0) - v1 + e2.ell0 - v2 + c->second;
                auto [it, fresh] = comp.emplace(std::move(c->first), value);
                if (!fresh) it->second = std::max(it->second, value);
            }
        long best = kCompLow;
        for (const auto &[t, value] : comp) best = std::max(best, value);
        assert(best != kCompLow && "empty types always combine");

        CycleEntry out;
        out.k0 = e1.k0 + e2.k0;
        out.d0 = e1.d0;
        out.ell0 = static_cast<int>(best);
        out.repr = e1.repr;
        for (int v : e2.repr)
            if (!contains(out.repr, v)) insert_sorted(out.repr, v);
        for (auto &[t, value] : comp) {
            if (value == kCompLow || value < best - cap_)
                out.f.emplace(t, kLow);
            else
                out.f.emplace(t, static_cast<int>(best - value));
        }
        return out;
    }
};

}  // namespace

Verdict solve_cycle_dp(const Instance &inst, const NiceDecomposition &nd) {
    if (inst.family.kind != ObjectFamily::Kind::Cycle)
        throw std::invalid_argument("solve_cycle_dp: family must be Cycle");
    if (!nd.with_edges)
        throw std::invalid_argument("solve_cycle_dp: decomposition must introduce edges");
    if (inst.ell == 0) return Verdict::no();
    CycleDp dp(inst, nd);
    return dp.run();
}

Verdict solve_cycle_dp(const Instance &inst) {
    auto td = compute_decomposition(inst.graph);
    auto nd = make_nice(td, inst.graph, true);
    return solve_cycle_dp(inst, nd);
}

}  // namespace hitpack
