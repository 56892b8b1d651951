#include "hitpack/reductions.hpp"

#include <cassert>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hitpack {

// ---------------------------------------------------------------------------
// DIMACS

void Cnf::validate() const {
    for (const auto &cl : clauses) {
        if (cl.empty()) throw std::invalid_argument("empty clause");
        for (int lit : cl) {
            if (lit == 0 || std::abs(lit) > num_vars)
                throw std::invalid_argument("literal out of range");
        }
    }
}

Cnf parse_dimacs(std::istream &in) {
    Cnf cnf;
    bool have_header = false;
    int declared_clauses = 0;
    std::string line;
    int lineno = 0;
    std::vector<int> current;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "c" || first[0] == 'c' || first == "%") continue;
        if (first == "p") {
            std::string fmt;
            if (!(ss >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf")
                throw ParseError(lineno, "malformed DIMACS header");
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(lineno, "clause before header");
        std::istringstream rest(line);
        int lit;
        while (rest >> lit) {
            if (lit == 0) {
                if (!current.empty()) {
                    cnf.clauses.push_back(current);
                    current.clear();
                }
            } else {
                if (std::abs(lit) > cnf.num_vars)
                    throw ParseError(lineno, "literal out of range");
                current.push_back(lit);
            }
        }
    }
    if (!have_header) throw ParseError(lineno, "missing DIMACS header");
    if (!current.empty()) cnf.clauses.push_back(current);
    cnf.validate();
    return cnf;
}

Cnf parse_dimacs_string(const std::string &text) {
    std::istringstream ss(text);
    return parse_dimacs(ss);
}

Cnf parse_dimacs_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_dimacs(in);
}

std::string emit_dimacs(const Cnf &phi) {
    std::ostringstream out;
    out << "p cnf " << phi.num_vars << " " << phi.clauses.size() << "\n";
    for (const auto &cl : phi.clauses) {
        for (int lit : cl) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Gadgets

namespace {

// Edge collector with deduplication (identifications can make two gadget
// edges coincide).
struct EdgeSet {
    std::set<std::pair<int, int>> edges;
    void add(int u, int v) {
        assert(u != v);
        edges.insert({std::min(u, v), std::max(u, v)});
    }
    Graph build(int n) const {
        return Graph::from_edges(n, {edges.begin(), edges.end()});
    }
};

}  // namespace

TriCycGadget gen_tricyc(int r) {
    if (r < 2) throw std::invalid_argument("gen_tricyc: r >= 2 required");
    // Cycle vertices 0..2r-1, then v_0..v_{r-1}, then vbar_0..vbar_{r-1}.
    EdgeSet es;
    TriCycGadget g;
    auto u = [&](int i) { return ((i % (2 * r)) + 2 * r) % (2 * r); };
    for (int i = 0; i < 2 * r; ++i) es.add(u(i), u(i + 1));
    for (int i = 0; i < r; ++i) {
        int vi = 2 * r + i, vbar = 3 * r + i;
        es.add(vi, u(2 * i));
        es.add(vi, u(2 * i + 1));
        es.add(vbar, u(2 * i + 1));
        es.add(vbar, u(2 * i + 2));
        g.v.push_back(vi);
        g.vbar.push_back(vbar);
    }
    g.graph = es.build(4 * r);
    return g;
}

TriCycGadget gen_sel(int r) {
    if (r < 2) throw std::invalid_argument("gen_sel: r >= 2 required");
    TriCycGadget base = gen_tricyc(3 * r);
    TriCycGadget g;
    g.graph = std::move(base.graph);
    for (int i = 0; i < r; ++i) {
        g.v.push_back(base.v[3 * i + 2]);       // v'_{3i} in 1-based terms
        g.vbar.push_back(base.vbar[3 * i]);     // vbar'_{3i-2}
    }
    return g;
}

namespace {

// Merges vertex b into a: edges of b move to a; ids above b shift down.
// Returns the id map old -> new.
std::vector<int> identify(Graph &g, int a, int b) {
    assert(a != b);
    if (a > b) std::swap(a, b);
    std::vector<int> remap(g.n);
    for (int v = 0; v < g.n; ++v) remap[v] = v < b ? v : (v == b ? a : v - 1);
    EdgeSet es;
    for (auto [x, y] : g.edges()) {
        int nx = remap[x], ny = remap[y];
        if (nx != ny) es.add(nx, ny);
    }
    g = es.build(g.n - 1);
    return remap;
}

}  // namespace

LitGadget gen_lit(int r) {
    if (r < 4) throw std::invalid_argument("gen_lit: r >= 4 required");
    TriCycGadget sel = gen_sel(r);
    LitGadget g;
    g.graph = sel.graph;
    auto remap = identify(g.graph, sel.vbar[0], sel.vbar[2]);
    for (int x : sel.v) g.v.push_back(remap[x]);
    return g;
}

CLitGadget gen_clit(int r) {
    if (r < 2) throw std::invalid_argument("gen_clit: r >= 2 required");
    // C4 number i in 0..6r-1 holds a_i = 3i, b_i = 3i+1, c_i = 3i+2, and
    // d_i = b_{i+1 mod 6r}.
    const int cycles = 6 * r;
    EdgeSet es;
    auto a = [&](int i) { return 3 * (i % cycles); };
    auto b = [&](int i) { return 3 * (((i % cycles) + cycles) % cycles) + 1; };
    auto c = [&](int i) { return 3 * (i % cycles) + 2; };
    for (int i = 0; i < cycles; ++i) {
        int d = b(i + 1);
        es.add(a(i), b(i));
        es.add(b(i), c(i));
        es.add(c(i), d);
        es.add(d, a(i));
    }
    CLitGadget g;
    g.graph = es.build(3 * cycles);
    for (int j = 0; j < r; ++j) {
        g.v.push_back(a(6 * j));
        g.vbar.push_back(a(6 * j + 3));
    }
    return g;
}

CSelGadget gen_csel() {
    // Five C4s in a chain: a_i = 3i, b_i = 3i+1, c_i = 3i+2 for i in 0..4,
    // d_i = b_{i+1} for i < 4, and a fresh d_4 = 15.
    EdgeSet es;
    for (int i = 0; i < 5; ++i) {
        int ai = 3 * i, bi = 3 * i + 1, ci = 3 * i + 2;
        int di = i < 4 ? 3 * (i + 1) + 1 : 15;
        es.add(ai, bi);
        es.add(bi, ci);
        es.add(ci, di);
        es.add(di, ai);
    }
    CSelGadget g;
    g.graph = es.build(16);
    for (int i = 0; i < 5; ++i) g.a.push_back(3 * i);
    return g;
}

DiamondGadget gen_diamond(const Graph &h) {
    if (h.n < 2 || !is_connected(h))
        throw std::invalid_argument("gen_diamond: pattern must be connected with >= 2 vertices");
    // All-pairs distances by BFS.
    std::vector<std::vector<int>> dist(h.n, std::vector<int>(h.n, -1));
    for (int s = 0; s < h.n; ++s) {
        std::queue<int> q;
        dist[s][s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : h.adj[v])
                if (dist[s][w] < 0) {
                    dist[s][w] = dist[s][v] + 1;
                    q.push(w);
                }
        }
    }
    int diameter = 0;
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) diameter = std::max(diameter, dist[i][j]);
    DiamondGadget g;
    for (int i = 0; i < h.n && g.u < 0; ++i)
        for (int j = 0; j < h.n; ++j)
            if (dist[i][j] == diameter) {
                g.u = i;
                break;
            }
    for (int j = 0; j < h.n; ++j)
        if (dist[g.u][j] == diameter) {
            g.uprime = j;
            break;
        }
    g.ubar = h.n;
    EdgeSet es;
    for (auto [x, y] : h.edges()) es.add(x, y);
    for (int w : h.adj[g.u]) es.add(g.ubar, w);
    g.graph = es.build(h.n + 1);
    for (int v = 0; v < h.n; ++v) g.forward.push_back(v);
    for (int v = 0; v < h.n; ++v)
        if (v != g.u) g.backward.push_back(v);
    g.backward.push_back(g.ubar);
    return g;
}

// ---------------------------------------------------------------------------
// SUS -> Triangle-HitPack

SusTriangle sus_to_triangle(const Cnf &phi, int k) {
    phi.validate();
    const int m = phi.num_clauses(), n = phi.num_vars;
    if (m < 1) {
        SusTriangle out;
        out.inst.graph = Graph(0);
        out.inst.k = k;
        out.inst.ell = 0;
        out.inst.family = ObjectFamily::clique(3);
        return out;
    }
    SusTriangle out;
    out.m = m;
    out.n = n;
    // Variable block i at 4m*i: v_i^j, vbar_i^j, w_i^j, wbar_i^j (m each).
    auto v = [&](int i, int j) { return 4 * m * i + j; };
    auto vbar = [&](int i, int j) { return 4 * m * i + m + j; };
    auto w = [&](int i, int j) { return 4 * m * i + 2 * m + (j % m); };
    auto wbar = [&](int i, int j) { return 4 * m * i + 3 * m + j; };
    const int clause_base = 4 * m * n;
    auto ca = [&](int j) { return clause_base + 3 * j; };
    auto cb = [&](int j) { return clause_base + 3 * j + 1; };
    auto cc = [&](int j) { return clause_base + 3 * j + 2; };

    EdgeSet es;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            es.add(w(i, j), v(i, j));
            es.add(v(i, j), wbar(i, j));
            es.add(w(i, j), wbar(i, j));
            es.add(wbar(i, j), vbar(i, j));
            es.add(vbar(i, j), w(i, j + 1));
            es.add(wbar(i, j), w(i, j + 1));
        }
    }
    for (int j = 0; j < m; ++j) {
        es.add(ca(j), cb(j));
        es.add(cb(j), cc(j));
        es.add(cc(j), ca(j));
        for (int lit : phi.clauses[j]) {
            int i = std::abs(lit) - 1;
            int target = lit > 0 ? v(i, j) : vbar(i, j);
            es.add(ca(j), target);
            es.add(cb(j), target);
        }
    }
    const int total = clause_base + 3 * m;
    out.inst.graph = es.build(total);
    for (int x = 0; x < total; ++x)
        if (x < clause_base || (x - clause_base) % 3 != 2) out.inst.undeletable.push_back(x);
    out.inst.k = k;
    out.inst.ell = m * n + m;
    out.inst.family = ObjectFamily::clique(3);
    for (int j = 0; j < m; ++j) out.clause_c.push_back(cc(j));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            out.literal_vertices.push_back(v(i, j));
            out.literal_vertices.push_back(vbar(i, j));
        }
    std::sort(out.literal_vertices.begin(), out.literal_vertices.end());
    out.inst.validate();
    return out;
}

Instance extend_to_partition(const SusTriangle &base, int k, bool as_cycle) {
    const int mn = base.m * base.n;
    if (k > mn) throw std::invalid_argument("extend_to_partition: k exceeds m*n");
    const int pairs = mn - k;
    const int n0 = base.inst.graph.n;
    EdgeSet es;
    for (auto [x, y] : base.inst.graph.edges()) es.add(x, y);
    for (int r = 0; r < pairs; ++r) {
        int yr = n0 + 2 * r, zr = n0 + 2 * r + 1;
        es.add(yr, zr);
        for (int v : base.literal_vertices) {
            es.add(v, yr);
            es.add(v, zr);
        }
    }
    Instance out;
    out.graph = es.build(n0 + 2 * pairs);
    out.undeletable = base.inst.undeletable;
    for (int x = n0; x < out.graph.n; ++x) out.undeletable.push_back(x);
    out.k = k;
    out.ell = base.inst.ell + pairs;  // a partition packs 2mn+m-k triangles
    out.family = as_cycle ? ObjectFamily::cycle() : ObjectFamily::clique(3);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Triangle-HitPack -> H-HitPack

TriangleToH triangle_to_h(const Instance &inst, const Graph &h, int chain_len) {
    if (inst.family.kind != ObjectFamily::Kind::Clique || inst.family.q != 3)
        throw std::invalid_argument("triangle_to_h: input family must be Clique(3)");
    if (h.n < 3 || !is_connected(h))
        throw std::invalid_argument("triangle_to_h: pattern must be connected with >= 3 vertices");
    if (chain_len < 0) chain_len = 10 * h.n;
    if (chain_len < 1) throw std::invalid_argument("triangle_to_h: chain length must be positive");

    const DiamondGadget diamond = gen_diamond(h);
    const auto triangles = enumerate_copies(inst.graph, ObjectFamily::clique(3));

    TriangleToH out;
    out.num_triangles = static_cast<int>(triangles.size());
    out.chain_len = chain_len;

    EdgeSet es;  // original edges deleted: only gadget edges appear
    int next = inst.graph.n;
    auto fresh = [&]() { return next++; };

    // Places one diamond copy with its connector u pre-identified; returns the
    // global ids (ubar fresh) and appends the forward/backward copies.
    auto place_diamond = [&](int u_global, std::vector<int> &fwd_sets_vertex_ids) {
        std::vector<int> ids(diamond.graph.n, -1);
        ids[diamond.u] = u_global;
        for (int x = 0; x < diamond.graph.n; ++x)
            if (ids[x] < 0) ids[x] = fresh();
        for (auto [x, y] : diamond.graph.edges()) es.add(ids[x], ids[y]);
        for (int x : diamond.forward) fwd_sets_vertex_ids.push_back(ids[x]);
        return ids[diamond.ubar];
    };

    for (const auto &tri : triangles) {
        std::vector<int> ends;
        for (int corner : tri) {
            int attach = corner;
            for (int d = 0; d < chain_len; ++d) {
                std::vector<int> fwd;
                attach = place_diamond(attach, fwd);
                out.all_forward.objects.push_back(std::move(fwd));
            }
            ends.push_back(attach);
        }
        // The pattern copy H_T, with chain ends identified with vertices 0,1,2.
        std::vector<int> ids(h.n, -1);
        ids[0] = ends[0];
        ids[1] = ends[1];
        ids[2] = ends[2];
        for (int x = 3; x < h.n; ++x) ids[x] = fresh();
        for (auto [x, y] : h.edges()) es.add(ids[x], ids[y]);
        out.all_forward.objects.push_back(ids);
    }

    out.inst.graph = es.build(next);
    out.inst.undeletable = inst.undeletable;
    for (int x = inst.graph.n; x < next; ++x) out.inst.undeletable.push_back(x);
    out.inst.k = inst.k;
    out.inst.ell = 3 * chain_len * out.num_triangles + inst.ell;
    out.inst.family = ObjectFamily::subgraph(h);
    out.inst.validate();
    return out;
}

// ---------------------------------------------------------------------------
// 3-SAT preprocessing

namespace {

// Unit propagation; returns false when an empty clause appears.
bool propagate_units(Cnf &cnf) {
    bool changed = true;
    while (changed) {
        changed = false;
        int unit = 0;
        for (const auto &cl : cnf.clauses)
            if (cl.size() == 1) {
                unit = cl[0];
                break;
            }
        if (unit == 0) break;
        std::vector<std::vector<int>> next;
        for (const auto &cl : cnf.clauses) {
            if (std::find(cl.begin(), cl.end(), unit) != cl.end()) continue;  // satisfied
            std::vector<int> reduced;
            for (int lit : cl)
                if (lit != -unit) reduced.push_back(lit);
            if (reduced.empty()) return false;
            next.push_back(std::move(reduced));
        }
        cnf.clauses = std::move(next);
        changed = true;
    }
    return true;
}

}  // namespace

Preprocessed preprocess_3sat(const Cnf &phi, PreprocessMode mode) {
    phi.validate();
    Preprocessed out;
    Cnf cnf = phi;

    // Deduplicate literals within clauses and drop tautological input clauses.
    {
        std::vector<std::vector<int>> kept;
        for (auto cl : cnf.clauses) {
            std::sort(cl.begin(), cl.end(), [](int a, int b) {
                return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
            });
            cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
            bool tautology = false;
            for (std::size_t t = 0; t + 1 < cl.size(); ++t)
                if (cl[t] == -cl[t + 1]) tautology = true;
            if (cl.size() > 3) throw std::invalid_argument("preprocess_3sat: clause wider than 3");
            if (!tautology) kept.push_back(std::move(cl));
        }
        cnf.clauses = std::move(kept);
    }

    if (!propagate_units(cnf)) {
        out.decided = true;
        out.answer = false;
        return out;
    }
    if (cnf.clauses.empty()) {
        out.decided = true;
        out.answer = true;
        return out;
    }

    // Split clauses with exactly two literals using a fresh variable.
    {
        std::vector<std::vector<int>> next;
        for (const auto &cl : cnf.clauses) {
            if (cl.size() == 2) {
                int y = ++cnf.num_vars;
                next.push_back({cl[0], cl[1], y});
                next.push_back({cl[0], cl[1], -y});
            } else {
                next.push_back(cl);
            }
        }
        cnf.clauses = std::move(next);
    }

    // Wrap-around clauses so every literal occurs.
    {
        const int nv = cnf.num_vars;
        auto wrap = [&](int i) { return (i - 1) % nv + 1; };
        for (int i = 1; i <= nv; ++i) {
            cnf.clauses.push_back({i, -i, wrap(i + 1)});
            cnf.clauses.push_back({i, -i, -wrap(i + 1)});
            cnf.clauses.push_back({i, -i, wrap(i + 2)});
            cnf.clauses.push_back({i, -i, -wrap(i + 2)});
        }
    }

    // Pad by duplication.
    const int effective = cnf.num_clauses();
    if (mode == PreprocessMode::Triangle) {
        int c = 4;
        while ((1 << c) < effective) ++c;
        out.parameter = c;
        int want = 1 << c;
        for (int j = 0; cnf.num_clauses() < want; ++j)
            cnf.clauses.push_back(cnf.clauses[j % effective]);
    } else {
        int t = 1;
        long long fact = 1;
        while (fact < effective) {
            ++t;
            fact *= t;
        }
        out.parameter = t;
        for (int j = 0; cnf.num_clauses() < fact; ++j)
            cnf.clauses.push_back(cnf.clauses[j % effective]);
    }
    out.cnf = std::move(cnf);
    return out;
}

// ---------------------------------------------------------------------------
// Lower-bound compilers

namespace {

int bit_of(int clause_index_0based, int gamma) { return (clause_index_0based >> gamma) & 1; }

}  // namespace

LowerBoundInstance threesat_to_triangle_pw(const Cnf &phi3) {
    phi3.validate();
    const int m = phi3.num_clauses();
    int c = 0;
    while ((1 << c) < m) ++c;
    if ((1 << c) != m || c < 4)
        throw std::invalid_argument("threesat_to_triangle_pw: clause count must be 2^c, c >= 4");
    const int n = phi3.num_vars;
    for (const auto &cl : phi3.clauses)
        if (cl.size() != 3)
            throw std::invalid_argument("threesat_to_triangle_pw: clauses must have 3 literals");

    LowerBoundInstance out;
    out.z_count = 6 * c;
    // Global ids: Z first (z^{(gamma)}_{p,b} = 6*gamma + 2*p + b), then the
    // d vertices, then gadget innards.
    auto z = [&](int gamma, int p, int b) { return 6 * gamma + 2 * p + b; };
    // Literal code: 0..2n-1 (positive x_i -> 2(i-1), negative -> 2(i-1)+1).
    auto lit_code = [&](int lit) { return 2 * (std::abs(lit) - 1) + (lit < 0 ? 1 : 0); };
    const int d_base = 6 * c;
    int next = d_base + 2 * n;
    EdgeSet es;
    std::vector<std::vector<int>> bags;

    // Selector gadgets.
    TriCycGadget sel = gen_sel(3);
    for (int gamma = 0; gamma < c; ++gamma) {
        std::vector<int> ids(sel.graph.n, -1);
        for (int p = 0; p < 3; ++p) {
            ids[sel.v[p]] = z(gamma, p, 0);
            ids[sel.vbar[p]] = z(gamma, p, 1);
        }
        for (int x = 0; x < sel.graph.n; ++x)
            if (ids[x] < 0) ids[x] = next++;
        for (auto [x, y] : sel.graph.edges()) es.add(ids[x], ids[y]);
        std::vector<int> bag(ids.begin(), ids.end());
        for (int gz = 0; gz < 6 * c; ++gz) bag.push_back(gz);
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        bags.push_back(std::move(bag));
    }
    out.selector_count = c;

    // Literal gadgets, grouped by literal so each d vertex spans a contiguous
    // stretch of bags.
    LitGadget lit = gen_lit(c + 1);
    std::vector<std::vector<std::pair<int, int>>> occurrences(2 * n);  // (clause, position)
    for (int j = 0; j < m; ++j)
        for (int p = 0; p < 3; ++p) occurrences[lit_code(phi3.clauses[j][p])].emplace_back(j, p);
    for (int code = 0; code < 2 * n; ++code) {
        assert(!occurrences[code].empty() && "preprocessing must make every literal occur");
        for (auto [j, p] : occurrences[code]) {
            std::vector<int> ids(lit.graph.n, -1);
            for (int gamma = 0; gamma < c; ++gamma)
                ids[lit.v[gamma]] = z(gamma, p, 1 - bit_of(j, gamma));
            ids[lit.v[c]] = d_base + code;
            for (int x = 0; x < lit.graph.n; ++x)
                if (ids[x] < 0) ids[x] = next++;
            for (auto [x, y] : lit.graph.edges()) es.add(ids[x], ids[y]);
            std::vector<int> bag(ids.begin(), ids.end());
            for (int gz = 0; gz < 6 * c; ++gz) bag.push_back(gz);
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            bags.push_back(std::move(bag));
            ++out.gadget_count;
        }
    }

    out.inst.graph = es.build(next);
    for (int x = 0; x < next; ++x)
        if (x < d_base || x >= d_base + 2 * n) out.inst.undeletable.push_back(x);
    for (int code = 0; code < 2 * n; ++code) out.deletable.push_back(d_base + code);
    out.inst.k = n;
    out.inst.ell = 3 * m * (3 * c + 2) + 9 * c + 3;
    out.inst.family = ObjectFamily::clique(3);
    out.inst.validate();

    out.td.bags = std::move(bags);
    for (std::size_t i = 0; i + 1 < out.td.bags.size(); ++i)
        out.td.tree_edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    return out;
}

LowerBoundInstance threesat_to_c4_pw(const Cnf &phi3) {
    phi3.validate();
    const int m = phi3.num_clauses();
    int t = 1;
    long long fact = 1;
    while (fact < m) {
        ++t;
        fact *= t;
    }
    if (fact != m) throw std::invalid_argument("threesat_to_c4_pw: clause count must be t!");
    const int n = phi3.num_vars;
    for (const auto &cl : phi3.clauses)
        if (cl.size() != 3)
            throw std::invalid_argument("threesat_to_c4_pw: clauses must have 3 literals");

    LowerBoundInstance out;
    out.z_count = 6 * t;
    auto z = [&](int gamma, int p, int g) { return 6 * gamma + 2 * p + g; };
    const int d_base = 6 * t;  // d_i^true = d_base + 2i, d_i^false = +1
    int next = d_base + 2 * n;
    EdgeSet es;
    std::vector<std::vector<int>> bags;

    // All t! permutations of {0..t-1} in lexicographic order.
    std::vector<std::vector<int>> sigma;
    {
        std::vector<int> perm(t);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            sigma.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    assert(static_cast<long long>(sigma.size()) == fact);

    // Selector side: one CSel per (i,j) pair, attached by edges.
    CSelGadget csel = gen_csel();
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) {
            std::vector<int> ids(csel.graph.n, -1);
            for (int x = 0; x < csel.graph.n; ++x) ids[x] = next++;
            for (auto [x, y] : csel.graph.edges()) es.add(ids[x], ids[y]);
            for (int p = 0; p < 3; ++p) {
                es.add(ids[csel.a[2 * p]], z(i, p, 0));
                es.add(ids[csel.a[2 * p]], z(j, p, 1));
            }
            std::vector<int> bag(ids.begin(), ids.end());
            for (int gz = 0; gz < 6 * t; ++gz) bag.push_back(gz);
            std::sort(bag.begin(), bag.end());
            bags.push_back(std::move(bag));
            ++out.selector_count;
        }

    // Literal side: CLit(t+1) per occurrence, grouped by variable so the two
    // d vertices of a variable span contiguous bags.
    CLitGadget clit = gen_clit(t + 1);
    std::vector<std::vector<std::pair<int, int>>> occ(2 * n);
    auto lit_code = [&](int lit) { return 2 * (std::abs(lit) - 1) + (lit < 0 ? 1 : 0); };
    for (int j = 0; j < m; ++j)
        for (int p = 0; p < 3; ++p) occ[lit_code(phi3.clauses[j][p])].emplace_back(j, p);
    for (int var = 0; var < n; ++var) {
        for (int sign = 0; sign < 2; ++sign) {
            int code = 2 * var + sign;
            assert(!occ[code].empty() && "preprocessing must make every literal occur");
            for (auto [j, p] : occ[code]) {
                std::vector<int> ids(clit.graph.n, -1);
                // Positive literal: v_{t+1} = d^true, vbar_{t+1} = d^false.
                int d_true = d_base + 2 * var, d_false = d_base + 2 * var + 1;
                ids[clit.v[t]] = sign == 0 ? d_true : d_false;
                ids[clit.vbar[t]] = sign == 0 ? d_false : d_true;
                for (int x = 0; x < clit.graph.n; ++x)
                    if (ids[x] < 0) ids[x] = next++;
                for (auto [x, y] : clit.graph.edges()) es.add(ids[x], ids[y]);
                for (int gamma = 0; gamma < t; ++gamma) {
                    es.add(ids[clit.vbar[gamma]], z(gamma, p, 0));
                    es.add(ids[clit.vbar[gamma]], z(sigma[j][gamma], p, 1));
                }
                std::vector<int> bag(ids.begin(), ids.end());
                for (int gz = 0; gz < 6 * t; ++gz) bag.push_back(gz);
                std::sort(bag.begin(), bag.end());
                bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
                bags.push_back(std::move(bag));
                ++out.gadget_count;
            }
        }
    }

    out.inst.graph = es.build(next);
    for (int x = 0; x < next; ++x)
        if (x < d_base || x >= d_base + 2 * n) out.inst.undeletable.push_back(x);
    for (int code = 0; code < 2 * n; ++code) out.deletable.push_back(d_base + code);
    out.inst.k = n;
    out.inst.ell = 3 * t * t + 9 * m * (t + 1) + 2 * t;
    out.inst.family = ObjectFamily::subgraph(cycle_graph(4));
    out.inst.validate();

    out.td.bags = std::move(bags);
    for (std::size_t i = 0; i + 1 < out.td.bags.size(); ++i)
        out.td.tree_edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    return out;
}

}  // namespace hitpack
