// Command-line front end: solving, verification, decomposition handling, and
// instance generation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hitpack/algebraic.hpp"
#include "hitpack/branching.hpp"
#include "hitpack/cycle_fvs.hpp"
#include "hitpack/dp_clique.hpp"
#include "hitpack/dp_cycle.hpp"
#include "hitpack/dp_hgraph.hpp"
#include "hitpack/instance.hpp"
#include "hitpack/packing.hpp"
#include "hitpack/reductions.hpp"
#include "hitpack/stats.hpp"
#include "hitpack/treewidth.hpp"

using json = nlohmann::json;
using namespace hitpack;

namespace {

constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_id_list(const std::string &text) {
    std::vector<int> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

void write_output(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

Verdict dispatch_solve(const std::string &algo, const Instance &inst,
                       const std::optional<TreeDecomposition> &td) {
    auto nice = [&](bool with_edges) {
        TreeDecomposition base = td ? *td : compute_decomposition(inst.graph);
        return make_nice(base, inst.graph, with_edges);
    };
    const auto kind = inst.family.kind;
    if (algo == "brute") return brute_hitpack(inst);
    if (algo == "edge-branch") {
        if (!inst.family.is_edge_like())
            throw UsageError("edge-branch requires family edge (or clique 2)");
        return solve_edge_branch(inst);
    }
    if (algo == "h-branch") {
        if (kind != ObjectFamily::Kind::Clique && kind != ObjectFamily::Kind::Subgraph)
            throw UsageError("h-branch requires family clique or subgraph");
        return solve_h_branch(inst);
    }
    if (algo == "cycle-fvs") {
        if (kind != ObjectFamily::Kind::Cycle) throw UsageError("cycle-fvs requires family cycle");
        return solve_cycle_fvs(inst);
    }
    if (algo == "dp-clique") {
        if (!inst.family.is_edge_like() && kind != ObjectFamily::Kind::Clique)
            throw UsageError("dp-clique requires family clique or edge");
        return solve_clique_dp(inst, nice(false));
    }
    if (algo == "dp-h") {
        if (kind != ObjectFamily::Kind::Subgraph) throw UsageError("dp-h requires family subgraph");
        return solve_hgraph_dp(inst, nice(false)).verdict;
    }
    if (algo == "dp-cycle") {
        if (kind != ObjectFamily::Kind::Cycle) throw UsageError("dp-cycle requires family cycle");
        return solve_cycle_dp(inst, nice(true));
    }
    throw UsageError("unknown algorithm '" + algo + "'");
}

int run_solve(const std::string &algo, const std::string &input, const std::string &td_path,
              bool want_witness, bool want_json) {
    Instance inst = parse_instance_file(input);
    std::optional<TreeDecomposition> td;
    if (!td_path.empty()) {
        std::ifstream in(td_path);
        if (!in) throw std::runtime_error("cannot open " + td_path);
        td = parse_td(in, inst.graph.n);
        std::string why;
        if (!validate_decomposition(*td, inst.graph, &why))
            throw UsageError("supplied decomposition invalid: " + why);
    }
    stats::reset();
    auto t0 = std::chrono::steady_clock::now();
    Verdict verdict = dispatch_solve(algo, inst, td);
    auto elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::cout << (verdict.yes ? "YES" : "NO") << "\n";
    if (verdict.yes && verdict.witness) {
        std::string why;
        if (!verify_solution(inst, *verdict.witness, &why))
            throw std::runtime_error("internal: witness failed verification: " + why);
        if (want_witness) {
            std::cout << "witness ";
            for (std::size_t i = 0; i < verdict.witness->size(); ++i)
                std::cout << (i ? "," : "") << (*verdict.witness)[i];
            std::cout << "\n";
        }
    } else if (want_witness && verdict.yes) {
        std::cerr << "note: " << algo << " is decision-only; no witness available\n";
    }
    if (want_json) {
        json report{{"answer", verdict.yes ? "YES" : "NO"},
                    {"algorithm", algo},
                    {"elapsed_ms", elapsed},
                    {"branch_nodes", stats::branch_nodes},
                    {"dp_classes", stats::dp_classes}};
        if (verdict.witness)
            report["witness"] = *verdict.witness;
        else
            report["witness"] = nullptr;
        std::cout << report.dump() << "\n";
    }
    return 0;
}

int run_gadget(const std::string &kind, int r, const std::string &h_path,
               const std::string &out_path) {
    std::ostringstream text;
    Graph g;
    std::ostringstream note;
    if (kind == "tricyc" || kind == "sel") {
        auto gg = kind == "tricyc" ? gen_tricyc(r) : gen_sel(r);
        g = gg.graph;
        note << "# v:";
        for (int x : gg.v) note << " " << x;
        note << "\n# vbar:";
        for (int x : gg.vbar) note << " " << x;
        note << "\n";
    } else if (kind == "lit") {
        auto gg = gen_lit(r);
        g = gg.graph;
        note << "# v:";
        for (int x : gg.v) note << " " << x;
        note << "\n";
    } else if (kind == "clit") {
        auto gg = gen_clit(r);
        g = gg.graph;
        note << "# v:";
        for (int x : gg.v) note << " " << x;
        note << "\n# vbar:";
        for (int x : gg.vbar) note << " " << x;
        note << "\n";
    } else if (kind == "csel") {
        auto gg = gen_csel();
        g = gg.graph;
        note << "# a:";
        for (int x : gg.a) note << " " << x;
        note << "\n";
    } else if (kind == "diamond") {
        if (h_path.empty()) throw UsageError("gen gadget diamond requires --pattern");
        Instance hi = parse_instance_file(h_path);
        auto gg = gen_diamond(hi.graph);
        g = gg.graph;
        note << "# u " << gg.u << " uprime " << gg.uprime << " ubar " << gg.ubar << "\n";
    } else {
        throw UsageError("unknown gadget kind '" + kind + "'");
    }
    text << note.str();
    text << "n " << g.n << "\n";
    for (auto [u, v] : g.edges()) text << "e " << u << " " << v << "\n";
    text << "k 0\nl 0\nfamily clique 3\n";
    write_output(out_path, text.str());
    return 0;
}

int run_gen_lower_bound(bool c4_mode, const std::string &cnf_path, const std::string &out_path,
                        const std::string &td_out) {
    Cnf phi = parse_dimacs_file(cnf_path);
    Preprocessed pre =
        preprocess_3sat(phi, c4_mode ? PreprocessMode::C4 : PreprocessMode::Triangle);
    if (pre.decided) {
        std::cout << "decided " << (pre.answer ? "SAT" : "UNSAT")
                  << " during preprocessing; no instance emitted\n";
        return 0;
    }
    LowerBoundInstance lb =
        c4_mode ? threesat_to_c4_pw(pre.cnf) : threesat_to_triangle_pw(pre.cnf);
    write_output(out_path, emit_instance(lb.inst));
    if (!td_out.empty()) write_output(td_out, emit_td(lb.td, lb.inst.graph.n));
    std::cerr << "n=" << lb.inst.graph.n << " l=" << lb.inst.ell << " k=" << lb.inst.k
              << " width=" << lb.td.width() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"X-HitPack solver suite"};
    app.require_subcommand(1);

    // solve / oracle
    std::string algo = "brute", input, td_path, out_path, solution, cnf_path, h_path, kind;
    bool want_witness = false, want_json = false, want_nice = false;
    int gadget_r = 2, chain_len = -1, solve_k = 0;
    int trials = 3, all_n = -1, mf_k = 0;
    std::uint64_t seed = 1;
    std::vector<std::string> inputs;

    auto *solve = app.add_subcommand("solve", "solve an instance");
    solve->add_option("--algo", algo,
                      "brute|edge-branch|h-branch|cycle-fvs|dp-clique|dp-h|dp-cycle");
    solve->add_option("--input", input, "instance file")->required();
    solve->add_option("--td", td_path, "PACE tree decomposition file");
    solve->add_flag("--witness", want_witness, "print the deletion set on YES");
    solve->add_option("--seed", seed, "seed for randomized subroutines");
    solve->add_flag("--json", want_json, "machine-readable report line");

    auto *oracle = app.add_subcommand("oracle", "solve with the exhaustive oracle");
    oracle->add_option("--input", input, "instance file")->required();
    oracle->add_flag("--witness", want_witness);
    oracle->add_flag("--json", want_json);

    auto *verify = app.add_subcommand("verify", "check a proposed solution");
    verify->add_option("--input", input)->required();
    verify->add_option("--solution", solution, "comma-separated vertex ids")->required();

    auto *td = app.add_subcommand("td", "compute a tree decomposition");
    td->add_option("--input", input)->required();
    td->add_flag("--nice", want_nice, "also build and report the nice form");
    td->add_option("-o", out_path, "output file (default stdout)");

    auto *gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    auto *gadget = gen->add_subcommand("gadget", "emit a named gadget graph");
    gadget->add_option("kind", kind, "tricyc|sel|lit|clit|csel|diamond")->required();
    gadget->add_option("--r", gadget_r, "gadget size parameter");
    gadget->add_option("--pattern", h_path, "pattern graph (instance file; diamond only)");
    gadget->add_option("-o", out_path);
    auto *sus = gen->add_subcommand("sus-triangle", "SUS formula to Triangle-HitPack");
    sus->add_option("--cnf", cnf_path, "DIMACS file")->required();
    sus->add_option("--k", solve_k, "clause-deletion budget")->required();
    sus->add_option("-o", out_path);
    auto *tri = gen->add_subcommand("3sat-triangle", "3-SAT to low-pathwidth Triangle-HitPack");
    tri->add_option("--cnf", cnf_path)->required();
    tri->add_option("-o", out_path);
    tri->add_option("--td-out", td_path, "write the analytic path decomposition");
    auto *c4 = gen->add_subcommand("3sat-c4", "3-SAT to low-pathwidth C4-HitPack");
    c4->add_option("--cnf", cnf_path)->required();
    c4->add_option("-o", out_path);
    c4->add_option("--td-out", td_path);
    auto *toh = gen->add_subcommand("triangle-to-h", "Triangle-HitPack to H-HitPack");
    toh->add_option("--input", input)->required();
    toh->add_option("--pattern", h_path, "pattern graph (instance file)")->required();
    toh->add_option("--chain-len", chain_len);
    toh->add_option("-o", out_path);

    auto *pm = app.add_subcommand("pm", "randomized perfect-matching test");
    pm->add_option("--input", input)->required();
    pm->add_option("--trials", trials);
    pm->add_option("--seed", seed);

    auto *mf = app.add_subcommand("mf-count", "count distinct matching functions");
    mf->add_option("--k", mf_k)->required();
    mf->add_option("--all-n", all_n, "enumerate all labeled graphs on n vertices");
    mf->add_option("--input", inputs, "instance files holding the family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (solve->parsed()) return run_solve(algo, input, td_path, want_witness, want_json);
        if (oracle->parsed()) return run_solve("brute", input, "", want_witness, want_json);
        if (verify->parsed()) {
            Instance inst = parse_instance_file(input);
            std::string why;
            if (verify_solution(inst, parse_id_list(solution), &why)) {
                std::cout << "VALID\n";
            } else {
                std::cout << "INVALID " << why << "\n";
            }
            return 0;
        }
        if (td->parsed()) {
            Instance inst = parse_instance_file(input);
            TreeDecomposition dec = compute_decomposition(inst.graph);
            write_output(out_path, emit_td(dec, inst.graph.n));
            if (want_nice) {
                NiceDecomposition nd = make_nice(dec, inst.graph, true);
                std::cerr << "nice nodes=" << nd.nodes.size() << " width=" << nd.width() << "\n";
            }
            return 0;
        }
        if (gadget->parsed()) return run_gadget(kind, gadget_r, h_path, out_path);
        if (sus->parsed()) {
            Cnf phi = parse_dimacs_file(cnf_path);
            SusTriangle st = sus_to_triangle(phi, solve_k);
            write_output(out_path, emit_instance(st.inst));
            return 0;
        }
        if (tri->parsed()) return run_gen_lower_bound(false, cnf_path, out_path, td_path);
        if (c4->parsed()) return run_gen_lower_bound(true, cnf_path, out_path, td_path);
        if (toh->parsed()) {
            Instance inst = parse_instance_file(input);
            Instance hinst = parse_instance_file(h_path);
            TriangleToH r = triangle_to_h(inst, hinst.graph, chain_len);
            write_output(out_path, emit_instance(r.inst));
            std::cerr << "triangles=" << r.num_triangles << " l=" << r.inst.ell << "\n";
            return 0;
        }
        if (pm->parsed()) {
            Instance inst = parse_instance_file(input);
            std::cout << (has_pm_algebraic(inst.graph, trials, seed) ? "true" : "false") << "\n";
            return 0;
        }
        if (mf->parsed()) {
            std::vector<Graph> family;
            std::string family_id;
            if (all_n >= 0) {
                if (all_n > 5) throw UsageError("mf-count --all-n supports n <= 5");
                const int pairs = all_n * (all_n - 1) / 2;
                for (int mask = 0; mask < (1 << pairs); ++mask) {
                    std::vector<std::pair<int, int>> edges;
                    int bit = 0;
                    for (int i = 0; i < all_n; ++i)
                        for (int j = i + 1; j < all_n; ++j, ++bit)
                            if ((mask >> bit) & 1) edges.emplace_back(i, j);
                    family.push_back(Graph::from_edges(all_n, edges));
                }
                family_id = "all-n" + std::to_string(all_n);
            } else {
                for (const auto &p : inputs) family.push_back(parse_instance_file(p).graph);
                family_id = "files";
            }
            if (family.empty()) throw UsageError("mf-count: empty family");
            int distinct = count_distinct_match_functions(family, mf_k);
            std::cout << family_id << "," << mf_k << "," << distinct << "," << family.size()
                      << "\n";
            return 0;
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
