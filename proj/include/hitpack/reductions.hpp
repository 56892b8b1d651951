#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hitpack/instance.hpp"
#include "hitpack/packing.hpp"
#include "hitpack/treewidth.hpp"

namespace hitpack {

// CNF with 1-based variable indices; literals +v / -v.
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    void validate() const;
    int num_clauses() const { return static_cast<int>(clauses.size()); }
};

Cnf parse_dimacs(std::istream &in);
Cnf parse_dimacs_string(const std::string &text);
Cnf parse_dimacs_file(const std::string &path);
std::string emit_dimacs(const Cnf &phi);

// --- Gadgets -------------------------------------------------------------

// Cycle of 2r triangles; P covers v_0..v_{r-1}, Pbar covers vbar_0..vbar_{r-1},
// and these are the only two maximum packings.
struct TriCycGadget {
    Graph graph;
    std::vector<int> v, vbar;  // distinguished vertices
};
TriCycGadget gen_tricyc(int r);  // r >= 2

// TriCyc(3r) with every third distinguished vertex kept.
TriCycGadget gen_sel(int r);  // r >= 2

// Sel(r) with vbar_0 and vbar_2 identified: exactly one packing of 3r
// triangles (covering all v_i) and a packing of 3r-1 avoiding them.
struct LitGadget {
    Graph graph;
    std::vector<int> v;
};
LitGadget gen_lit(int r);  // r >= 4

// Cycle of 6r four-cycles: the C4 analogue of Sel.
struct CLitGadget {
    Graph graph;
    std::vector<int> v, vbar;
};
CLitGadget gen_clit(int r);  // r >= 2

// Chain of five four-cycles; a_0, a_2, a_4 get wired to the middle layer.
struct CSelGadget {
    Graph graph;
    std::vector<int> a;  // a_0..a_4
};
CSelGadget gen_csel();

// H plus a twin ubar of u, where (u, uprime) is a diameter pair (lowest ids
// on ties). The forward packing covers the original H; the backward packing
// swaps u for ubar.
struct DiamondGadget {
    Graph graph;  // vertices 0..|H|-1 original, |H| = ubar
    int u = -1, uprime = -1, ubar = -1;
    std::vector<int> forward, backward;  // vertex sets of the two packings
};
DiamondGadget gen_diamond(const Graph &h);  // connected, >= 2 vertices

// --- SUS -> Triangle-HitPack (and the partition/cycle extension) ---------

struct SusTriangle {
    Instance inst;
    int m = 0, n = 0;
    std::vector<int> clause_c;          // the deletable c_j
    std::vector<int> literal_vertices;  // all v_i^j and vbar_i^j
};
SusTriangle sus_to_triangle(const Cnf &phi, int k);

// Adds mn-k pairs {y_r, z_r} with a triangle {v, y_r, z_r} for every literal
// vertex v; turns packings into partitions. Family Cycle by default (the
// hardness form), Clique(3) otherwise.
Instance extend_to_partition(const SusTriangle &base, int k, bool as_cycle = true);

// --- Triangle-HitPack -> H-HitPack (diamond chains) -----------------------

struct TriangleToH {
    Instance inst;
    int num_triangles = 0;
    int chain_len = 0;
    Packing all_forward;  // forward packing on every chain plus every H_T copy
};
TriangleToH triangle_to_h(const Instance &inst, const Graph &h, int chain_len = -1);

// --- 3-SAT preprocessing and the two pathwidth lower-bound compilers -----

enum class PreprocessMode { Triangle, C4 };

struct Preprocessed {
    Cnf cnf;
    bool decided = false;  // propagation settled satisfiability
    bool answer = false;   // valid when decided
    int parameter = 0;     // c (m = 2^c) or t (m = t!)
};
Preprocessed preprocess_3sat(const Cnf &phi, PreprocessMode mode);

struct LowerBoundInstance {
    Instance inst;
    TreeDecomposition td;  // analytic path decomposition
    int z_count = 0;
    int gadget_count = 0;           // literal-side gadget copies
    int selector_count = 0;         // selector-side gadget copies
    std::vector<int> deletable;     // the d vertices
};
LowerBoundInstance threesat_to_triangle_pw(const Cnf &phi3);
LowerBoundInstance threesat_to_c4_pw(const Cnf &phi3);

}  // namespace hitpack
