#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hitpack/packing.hpp"
#include "hitpack/reductions.hpp"
#include "oracle_util.hpp"

using namespace hitpack;

namespace {

// All packings of exactly `size` disjoint objects, counted exhaustively.
long count_packings(const Graph &g, const std::vector<std::vector<int>> &objects, int size,
                    std::vector<char> *covers_out = nullptr) {
    long count = 0;
    std::vector<char> used(g.n, 0);
    auto rec = [&](auto &&self, std::size_t from, int left) -> void {
        if (left == 0) {
            ++count;
            if (covers_out)
                for (int v = 0; v < g.n; ++v) (*covers_out)[v] |= used[v];
            return;
        }
        for (std::size_t i = from; i < objects.size(); ++i) {
            bool free = true;
            for (int v : objects[i])
                if (used[v]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (int v : objects[i]) used[v] = 1;
            self(self, i + 1, left - 1);
            for (int v : objects[i]) used[v] = 0;
        }
    };
    if (covers_out) covers_out->assign(g.n, 0);
    rec(rec, 0, size);
    return count;
}

}  // namespace

TEST_CASE("TriCyc gadget") {
    TriCycGadget g2 = gen_tricyc(2);
    CHECK(g2.graph.n == 8);
    CHECK(g2.graph.edge_count() == 12);
    auto triangles = enumerate_copies(g2.graph, ObjectFamily::clique(3));
    CHECK(max_packing(g2.graph, ObjectFamily::clique(3)) == 2);
    CHECK(count_packings(g2.graph, triangles, 2) == 2);

    for (int r : {3, 4}) {
        TriCycGadget g = gen_tricyc(r);
        auto tris = enumerate_copies(g.graph, ObjectFamily::clique(3));
        CHECK(max_packing(g.graph, ObjectFamily::clique(3)) == r);
        CHECK(count_packings(g.graph, tris, r) == 2);
    }
    CHECK_THROWS_AS(gen_tricyc(1), std::invalid_argument);
}

TEST_CASE("Sel gadget covers the claimed vertex sets") {
    for (int r : {2, 3}) {
        TriCycGadget sel = gen_sel(r);
        auto tris = enumerate_copies(sel.graph, ObjectFamily::clique(3));
        CHECK(count_packings(sel.graph, tris, 3 * r) == 2);
        // One maximum packing covers every v_i and no vbar_i; the other the
        // reverse. Checked by inspecting both maximum packings explicitly.
        long seen_v = 0, seen_vbar = 0;
        std::vector<char> used(sel.graph.n, 0);
        auto rec = [&](auto &&self, std::size_t from, int left) -> void {
            if (left == 0) {
                bool all_v = true, all_vbar = true;
                for (int x : sel.v) all_v &= used[x];
                for (int x : sel.vbar) all_vbar &= used[x];
                if (all_v) {
                    bool none_bar = true;
                    for (int x : sel.vbar) none_bar &= !used[x];
                    seen_v += none_bar;
                }
                if (all_vbar) {
                    bool none_v = true;
                    for (int x : sel.v) none_v &= !used[x];
                    seen_vbar += none_v;
                }
                return;
            }
            for (std::size_t i = from; i < tris.size(); ++i) {
                bool free = true;
                for (int v : tris[i]) free &= !used[v];
                if (!free) continue;
                for (int v : tris[i]) used[v] = 1;
                self(self, i + 1, left - 1);
                for (int v : tris[i]) used[v] = 0;
            }
        };
        rec(rec, 0, 3 * r);
        CHECK(seen_v == 1);
        CHECK(seen_vbar == 1);
    }
}

TEST_CASE("Lit gadget") {
    LitGadget lit = gen_lit(4);
    auto tris = enumerate_copies(lit.graph, ObjectFamily::clique(3));
    CHECK(max_packing(lit.graph, ObjectFamily::clique(3)) == 12);
    std::vector<char> covered;
    CHECK(count_packings(lit.graph, tris, 12, &covered) == 1);
    for (int x : lit.v) CHECK(covered[x]);  // the unique maximum covers every v_i

    // A packing of 11 avoiding all v_i exists.
    std::vector<std::vector<int>> avoiding;
    for (const auto &t : tris) {
        bool ok = true;
        for (int x : lit.v) ok &= std::find(t.begin(), t.end(), x) == t.end();
        if (ok) avoiding.push_back(t);
    }
    CHECK(count_packings(lit.graph, avoiding, 11) > 0);
}

TEST_CASE("CLit gadget") {
    CLitGadget clit = gen_clit(2);
    CHECK(clit.graph.n == 36);
    ObjectFamily c4 = ObjectFamily::subgraph(cycle_graph(4));
    auto copies = enumerate_copies(clit.graph, c4);
    CHECK(copies.size() == 12);  // only the constructed four-cycles
    CHECK(max_packing(clit.graph, c4) == 6);
    CHECK(count_packings(clit.graph, copies, 6) == 2);

    for (int r : {3}) {
        CLitGadget g = gen_clit(r);
        auto cs = enumerate_copies(g.graph, c4);
        CHECK(count_packings(g.graph, cs, 3 * r) == 2);
    }
}

TEST_CASE("CSel gadget") {
    CSelGadget csel = gen_csel();
    // Five chained four-cycles share four vertices: 20 - 4 = 16.
    CHECK(csel.graph.n == 16);
    CHECK(max_packing(csel.graph, ObjectFamily::subgraph(cycle_graph(4))) == 3);
    // As a cycle family the answer is the same: the chain holds no other cycle.
    CHECK(max_packing(csel.graph, ObjectFamily::cycle()) == 3);
}

TEST_CASE("diamond gadget") {
    DiamondGadget d = gen_diamond(path_graph(3));
    CHECK(d.graph.n == 4);
    CHECK(d.u != d.ubar);
    ObjectFamily fam = ObjectFamily::subgraph(path_graph(3));
    Packing fwd{{d.forward}}, bwd{{d.backward}};
    CHECK(validate_packing(d.graph, fam, fwd));
    CHECK(validate_packing(d.graph, fam, bwd));
}

TEST_CASE("sus_to_triangle on the worked example") {
    // (x1 or x2 or not x3) and (not x1 or x2 or x3), k = 1.
    Cnf phi;
    phi.num_vars = 3;
    phi.clauses = {{1, 2, -3}, {-1, 2, 3}};
    SusTriangle st = sus_to_triangle(phi, 1);
    CHECK(st.inst.graph.n == 30);
    CHECK(st.inst.ell == 8);
    CHECK(st.inst.k == 1);
    CHECK(st.inst.undeletable.size() == 28);
    CHECK_FALSE(brute_hitpack(st.inst).yes);
}

TEST_CASE("sus_to_triangle single clause arithmetic") {
    Cnf phi;
    phi.num_vars = 1;
    phi.clauses = {{1}};
    SusTriangle st = sus_to_triangle(phi, 0);
    CHECK(st.inst.ell == 2);  // m*n + m with m = n = 1
    CHECK(st.inst.undeletable.size() == static_cast<std::size_t>(st.inst.graph.n - 1));
}

TEST_CASE("sus_to_triangle contradiction is hittable") {
    Cnf phi;
    phi.num_vars = 1;
    phi.clauses = {{1}, {-1}};
    SusTriangle st = sus_to_triangle(phi, 2);
    CHECK(brute_hitpack(st.inst).yes);  // both clauses form an unsatisfiable core
}

TEST_CASE("extend_to_partition arithmetic") {
    Cnf phi;
    phi.num_vars = 2;
    phi.clauses = {{1, 2}, {-1, 2}};
    SusTriangle st = sus_to_triangle(phi, 1);
    Instance ext = extend_to_partition(st, 1);
    CHECK(ext.graph.n == st.inst.graph.n + 2 * (st.m * st.n - 1));
    CHECK(ext.family.kind == ObjectFamily::Kind::Cycle);
    // Every y vertex sees every literal vertex plus its partner.
    int yr = st.inst.graph.n;
    CHECK(ext.graph.degree(yr) == 2 * st.m * st.n + 1);

    Instance nothing = extend_to_partition(st, st.m * st.n);
    CHECK(nothing.graph.n == st.inst.graph.n);  // k = mn adds nothing
    CHECK_THROWS_AS(extend_to_partition(st, st.m * st.n + 1), std::invalid_argument);
}

TEST_CASE("triangle_to_h") {
    Instance base;
    base.graph = complete_graph(3);
    base.k = 1;
    base.ell = 1;
    base.family = ObjectFamily::clique(3);

    TriangleToH full = triangle_to_h(base, path_graph(3));
    CHECK(full.num_triangles == 1);
    CHECK(full.inst.ell == 1 + 90);
    CHECK(full.all_forward.objects.size() == 91);
    CHECK(validate_packing(full.inst.graph, full.inst.family, full.all_forward));

    TriangleToH tiny = triangle_to_h(base, path_graph(3), 1);
    CHECK(tiny.inst.ell == 1 + 3);

    Instance empty;
    empty.graph = path_graph(4);
    empty.k = 0;
    empty.ell = 2;
    empty.family = ObjectFamily::clique(3);
    TriangleToH none = triangle_to_h(empty, path_graph(3), 5);
    CHECK(none.num_triangles == 0);
    CHECK(none.inst.ell == 2);
    CHECK(none.inst.graph.edge_count() == 0);  // original edges removed
}

TEST_CASE("preprocess_3sat") {
    Cnf phi;  // plain 3-CNF: clause count becomes 2^c >= m' + 4n
    phi.num_vars = 3;
    phi.clauses = {{1, 2, 3}, {-1, -2, -3}};
    Preprocessed pre = preprocess_3sat(phi, PreprocessMode::Triangle);
    REQUIRE_FALSE(pre.decided);
    CHECK(pre.cnf.num_clauses() == 16);
    CHECK(pre.parameter == 4);
    CHECK(pre.cnf.num_clauses() >= 2 + 4 * 3);

    Cnf two;
    two.num_vars = 2;
    two.clauses = {{1, 2}};
    Preprocessed p2 = preprocess_3sat(two, PreprocessMode::Triangle);
    REQUIRE_FALSE(p2.decided);
    CHECK(p2.cnf.num_vars == 3);  // one fresh variable
    for (const auto &cl : p2.cnf.clauses) CHECK(cl.size() == 3);

    // A clause that dedupes to a unit propagates the whole formula away.
    Cnf c4in;
    c4in.num_vars = 1;
    c4in.clauses = {{1, 1, 1}};
    Preprocessed p3 = preprocess_3sat(c4in, PreprocessMode::C4);
    REQUIRE(p3.decided);
    CHECK(p3.answer);

    // Tautological input clauses drop before the wraparound is added.
    Cnf taut;
    taut.num_vars = 2;
    taut.clauses = {{1, 2, -1}};
    Preprocessed pt = preprocess_3sat(taut, PreprocessMode::Triangle);
    REQUIRE(pt.decided);  // nothing but tautologies: satisfiable
    CHECK(pt.answer);

    // c4 mode: one surviving 3-clause over 3 variables gives 13 effective
    // clauses, padded to the minimal factorial 4! = 24.
    Cnf c4b;
    c4b.num_vars = 3;
    c4b.clauses = {{1, 2, 3}};
    Preprocessed p4 = preprocess_3sat(c4b, PreprocessMode::C4);
    REQUIRE_FALSE(p4.decided);
    CHECK(p4.parameter == 4);
    CHECK(p4.cnf.num_clauses() == 24);

    Cnf unsat;
    unsat.num_vars = 1;
    unsat.clauses = {{1}, {-1}};
    Preprocessed p5 = preprocess_3sat(unsat, PreprocessMode::Triangle);
    REQUIRE(p5.decided);
    CHECK_FALSE(p5.answer);
}

TEST_CASE("threesat_to_triangle_pw minimal instance") {
    Cnf phi;
    phi.num_vars = 3;
    phi.clauses = {{1, 2, 3}};  // 1 + 4*3 effective clauses, padded to 16
    Preprocessed pre = preprocess_3sat(phi, PreprocessMode::Triangle);
    REQUIRE_FALSE(pre.decided);
    REQUIRE(pre.cnf.num_clauses() == 16);
    LowerBoundInstance lb = threesat_to_triangle_pw(pre.cnf);
    const int m = 16, c = 4;
    CHECK(lb.inst.ell == 3 * m * (3 * c + 2) + 9 * c + 3);
    CHECK(lb.inst.ell == 711);
    CHECK(lb.z_count == 24);
    CHECK(lb.gadget_count == 3 * m);
    CHECK(lb.inst.k == pre.cnf.num_vars);
    std::string why;
    CHECK_MESSAGE(validate_decomposition(lb.td, lb.inst.graph, &why), why);
    // Width bound: middle layer plus one literal gadget.
    int lit_size = gen_lit(c + 1).graph.n;
    CHECK(lb.td.width() <= 6 * c + lit_size);
    CHECK(lb.inst.k == 3);
    // Structural degree audit: every d vertex has degree 2 per hosting gadget.
    for (int code = 0; code < static_cast<int>(lb.deletable.size()); ++code) {
        int d = lb.deletable[code];
        long occ = 0;
        for (int j = 0; j < m; ++j)
            for (int lit2 : pre.cnf.clauses[j]) {
                int lc = 2 * (std::abs(lit2) - 1) + (lit2 < 0 ? 1 : 0);
                occ += lc == code;
            }
        CHECK(lb.inst.graph.degree(d) == 2 * occ);
    }
}

TEST_CASE("threesat_to_c4_pw with t = 3") {
    // The compiler only needs m = t! three-literal clauses with every
    // literal occurring; a hand-built 6-clause formula hits t = 3 exactly.
    Cnf phi;
    phi.num_vars = 2;
    phi.clauses = {{1, -1, 2}, {1, -1, -2}, {2, -2, 1}, {2, -2, -1}, {1, 2, -1}, {-1, -2, 2}};
    LowerBoundInstance lb = threesat_to_c4_pw(phi);
    CHECK(lb.inst.ell == 3 * 9 + 9 * 6 * 4 + 6);
    CHECK(lb.inst.ell == 249);
    CHECK(lb.z_count == 18);
    CHECK(lb.selector_count == 9);
    CHECK(lb.inst.k == 2);
    std::string why;
    CHECK_MESSAGE(validate_decomposition(lb.td, lb.inst.graph, &why), why);

    // Permutations pairwise distinct is asserted structurally: wiring of two
    // equal clause indices would coincide, different ones differ somewhere.
    CHECK(lb.gadget_count == 3 * 6);
}

TEST_CASE("cycle packings of CLit reduce to C4 packings") {
    CLitGadget g = gen_clit(2);
    CHECK(max_packing(g.graph, ObjectFamily::cycle()) ==
          max_packing(g.graph, ObjectFamily::subgraph(cycle_graph(4))));
}

TEST_CASE("dimacs round trip") {
    Cnf phi;
    phi.num_vars = 4;
    phi.clauses = {{1, -2, 3}, {-4, 2, -1}, {4}};
    Cnf back = parse_dimacs_string(emit_dimacs(phi));
    CHECK(back.num_vars == phi.num_vars);
    CHECK(back.clauses == phi.clauses);
    CHECK_THROWS_AS(parse_dimacs_string("p cnf 1 1\n5 0\n"), ParseError);
}

TEST_CASE("SUS round trip on tiny formulas") {
    // Brute SUS: an unsatisfiable subformula with <= k clauses exists.
    auto brute_sus = [](const Cnf &phi, int k) {
        const int m = phi.num_clauses();
        for (int mask = 0; mask < (1 << m); ++mask) {
            if (__builtin_popcount(static_cast<unsigned>(mask)) > k) continue;
            if (mask == 0) continue;  // the empty subformula is satisfiable
            bool satisfiable = false;
            for (int assign = 0; assign < (1 << phi.num_vars) && !satisfiable; ++assign) {
                bool all = true;
                for (int j = 0; j < m && all; ++j) {
                    if (!((mask >> j) & 1)) continue;
                    bool clause_ok = false;
                    for (int lit : phi.clauses[j]) {
                        int var = std::abs(lit) - 1;
                        bool val = (assign >> var) & 1;
                        clause_ok |= (lit > 0) == val;
                    }
                    all &= clause_ok;
                }
                satisfiable = all;
            }
            if (!satisfiable) return true;
        }
        return false;
    };

    std::mt19937 rng(109);
    for (int round = 0; round < 40; ++round) {
        Cnf phi;
        phi.num_vars = 2;
        int m = 1 + static_cast<int>(rng() % 2);
        for (int j = 0; j < m; ++j) {
            std::vector<int> clause;
            for (int v = 1; v <= 2; ++v) {
                int pick = static_cast<int>(rng() % 3);
                if (pick == 0) clause.push_back(v);
                if (pick == 1) clause.push_back(-v);
            }
            if (clause.empty()) clause.push_back(1);
            phi.clauses.push_back(clause);
        }
        for (int k = 0; k <= m; ++k) {
            SusTriangle st = sus_to_triangle(phi, k);
            CHECK(brute_hitpack(st.inst).yes == brute_sus(phi, k));
        }
    }
}
