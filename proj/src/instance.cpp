#include "hitpack/instance.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace hitpack {

ObjectFamily ObjectFamily::clique(int q) {
    if (q < 2) throw std::invalid_argument("clique order must be at least 2");
    return {Kind::Clique, q, {}};
}

ObjectFamily ObjectFamily::subgraph(Graph h) {
    if (h.n < 1) throw std::invalid_argument("pattern graph must have at least one vertex");
    if (!is_connected(h)) throw std::invalid_argument("pattern graph must be connected");
    return {Kind::Subgraph, 2, std::move(h)};
}

std::string ObjectFamily::name() const {
    switch (kind) {
        case Kind::Edge: return "edge";
        case Kind::Clique: return "clique " + std::to_string(q);
        case Kind::Subgraph:
            return "subgraph (" + std::to_string(pattern.n) + " vertices, " +
                   std::to_string(pattern.edge_count()) + " edges)";
        case Kind::Cycle: return "cycle";
    }
    return "?";
}

std::vector<int> Instance::deletable_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < graph.n; ++v)
        if (!is_undeletable(v)) out.push_back(v);
    return out;
}

void Instance::validate() const {
    for (int v : undeletable)
        if (v < 0 || v >= graph.n) throw std::invalid_argument("undeletable vertex out of range");
    if (!std::is_sorted(undeletable.begin(), undeletable.end()))
        throw std::invalid_argument("undeletable set not sorted");
    if (k < 0 || ell < 0) throw std::invalid_argument("k and l must be nonnegative");
    if (family.kind == ObjectFamily::Kind::Clique && family.q < 2)
        throw std::invalid_argument("clique order must be at least 2");
    if (family.kind == ObjectFamily::Kind::Subgraph &&
        (family.pattern.n < 1 || !is_connected(family.pattern)))
        throw std::invalid_argument("pattern graph must be connected and nonempty");
}

namespace {

std::vector<std::string> tokenize(const std::string &line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

int parse_int(const std::string &tok, int lineno) {
    try {
        std::size_t pos = 0;
        int value = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return value;
    } catch (...) {
        throw ParseError(lineno, "expected integer, got '" + tok + "'");
    }
}

}  // namespace

Instance parse_instance(std::istream &in) {
    Instance inst;
    bool have_n = false, have_k = false, have_l = false, have_family = false;
    int h_n = -1;
    std::vector<std::pair<int, int>> edges, h_edges;
    std::vector<int> undel;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string &key = toks[0];

        auto want = [&](std::size_t count) {
            if (toks.size() != count)
                throw ParseError(lineno, "malformed '" + key + "' directive");
        };
        auto vertex_arg = [&](const std::string &tok) {
            int v = parse_int(tok, lineno);
            if (!have_n) throw ParseError(lineno, "'n' must come first");
            if (v < 0 || v >= inst.graph.n)
                throw ParseError(lineno, "vertex " + tok + " out of range");
            return v;
        };

        if (key == "n") {
            want(2);
            if (have_n) throw ParseError(lineno, "duplicate 'n' directive");
            int n = parse_int(toks[1], lineno);
            if (n < 0) throw ParseError(lineno, "negative vertex count");
            inst.graph = Graph(n);
            have_n = true;
        } else if (key == "e") {
            want(3);
            int u = vertex_arg(toks[1]), v = vertex_arg(toks[2]);
            if (u == v) throw ParseError(lineno, "self-loop");
            edges.emplace_back(u, v);
        } else if (key == "u") {
            want(2);
            undel.push_back(vertex_arg(toks[1]));
        } else if (key == "k") {
            want(2);
            inst.k = parse_int(toks[1], lineno);
            if (inst.k < 0) throw ParseError(lineno, "k must be nonnegative");
            have_k = true;
        } else if (key == "l") {
            want(2);
            inst.ell = parse_int(toks[1], lineno);
            if (inst.ell < 0) throw ParseError(lineno, "l must be nonnegative");
            have_l = true;
        } else if (key == "family") {
            if (have_family) throw ParseError(lineno, "duplicate 'family' directive");
            have_family = true;
            if (toks.size() == 2 && toks[1] == "edge") {
                inst.family = ObjectFamily::edge();
            } else if (toks.size() == 2 && toks[1] == "cycle") {
                inst.family = ObjectFamily::cycle();
            } else if (toks.size() == 3 && toks[1] == "clique") {
                int q = parse_int(toks[2], lineno);
                if (q < 2) throw ParseError(lineno, "clique order must be at least 2");
                inst.family = ObjectFamily{ObjectFamily::Kind::Clique, q, {}};
            } else if (toks.size() == 2 && toks[1] == "subgraph") {
                inst.family = ObjectFamily{ObjectFamily::Kind::Subgraph, 2, {}};
            } else {
                throw ParseError(lineno, "unknown family");
            }
        } else if (key == "h") {
            if (!have_family || inst.family.kind != ObjectFamily::Kind::Subgraph)
                throw ParseError(lineno, "'h' directive outside 'family subgraph'");
            if (toks.size() == 3 && toks[1] == "n") {
                if (h_n >= 0) throw ParseError(lineno, "duplicate 'h n' directive");
                h_n = parse_int(toks[2], lineno);
                if (h_n < 1) throw ParseError(lineno, "pattern must have at least one vertex");
            } else if (toks.size() == 4 && toks[1] == "e") {
                if (h_n < 0) throw ParseError(lineno, "'h n' must precede 'h e'");
                int u = parse_int(toks[2], lineno), v = parse_int(toks[3], lineno);
                if (u < 0 || u >= h_n || v < 0 || v >= h_n)
                    throw ParseError(lineno, "pattern vertex out of range");
                if (u == v) throw ParseError(lineno, "self-loop in pattern");
                h_edges.emplace_back(u, v);
            } else {
                throw ParseError(lineno, "malformed 'h' directive");
            }
        } else {
            throw ParseError(lineno, "unknown directive '" + key + "'");
        }
    }

    if (!have_n) throw ParseError(lineno, "missing 'n' directive");
    if (!have_k) throw ParseError(lineno, "missing 'k' directive");
    if (!have_l) throw ParseError(lineno, "missing 'l' directive");
    if (!have_family) throw ParseError(lineno, "missing 'family' directive");

    try {
        inst.graph = Graph::from_edges(inst.graph.n, edges);
    } catch (const std::invalid_argument &e) {
        throw ParseError(lineno, e.what());
    }

    if (inst.family.kind == ObjectFamily::Kind::Subgraph) {
        if (h_n < 0) throw ParseError(lineno, "missing 'h n' directive for subgraph family");
        Graph h;
        try {
            h = Graph::from_edges(h_n, h_edges);
        } catch (const std::invalid_argument &e) {
            throw ParseError(lineno, std::string("pattern: ") + e.what());
        }
        if (!is_connected(h)) throw ParseError(lineno, "pattern graph is disconnected");
        inst.family.pattern = std::move(h);
    }

    std::sort(undel.begin(), undel.end());
    undel.erase(std::unique(undel.begin(), undel.end()), undel.end());
    inst.undeletable = std::move(undel);
    inst.validate();
    return inst;
}

Instance parse_instance_string(const std::string &text) {
    std::istringstream ss(text);
    return parse_instance(ss);
}

Instance parse_instance_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_instance(in);
}

std::string emit_instance(const Instance &inst) {
    std::ostringstream out;
    out << "n " << inst.graph.n << "\n";
    for (auto [u, v] : inst.graph.edges()) out << "e " << u << " " << v << "\n";
    for (int v : inst.undeletable) out << "u " << v << "\n";
    out << "k " << inst.k << "\n";
    out << "l " << inst.ell << "\n";
    switch (inst.family.kind) {
        case ObjectFamily::Kind::Edge: out << "family edge\n"; break;
        case ObjectFamily::Kind::Cycle: out << "family cycle\n"; break;
        case ObjectFamily::Kind::Clique: out << "family clique " << inst.family.q << "\n"; break;
        case ObjectFamily::Kind::Subgraph:
            out << "family subgraph\n";
            out << "h n " << inst.family.pattern.n << "\n";
            for (auto [u, v] : inst.family.pattern.edges()) out << "h e " << u << " " << v << "\n";
            break;
    }
    return out.str();
}

Verdict Verdict::yes_with(std::vector<int> w) {
    std::sort(w.begin(), w.end());
    return {true, std::move(w)};
}

}  // namespace hitpack
