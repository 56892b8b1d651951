#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hitpack/graph.hpp"

namespace hitpack {

// The object family X of an X-HitPack instance.
struct ObjectFamily {
    enum class Kind { Edge, Clique, Subgraph, Cycle };

    Kind kind = Kind::Edge;
    int q = 2;      // Clique only
    Graph pattern;  // Subgraph only; connected, >= 1 vertex

    static ObjectFamily edge() { return {Kind::Edge, 2, {}}; }
    static ObjectFamily clique(int q);
    static ObjectFamily subgraph(Graph h);
    static ObjectFamily cycle() { return {Kind::Cycle, 2, {}}; }

    // Clique(2) and Edge denote the same family.
    bool is_edge_like() const { return kind == Kind::Edge || (kind == Kind::Clique && q == 2); }

    std::string name() const;
};

// One X-HitPack instance: does some S subseteq V\U with |S| <= k make the
// maximum X-packing of G-S strictly smaller than ell?
struct Instance {
    Graph graph;
    std::vector<int> undeletable;  // sorted
    int k = 0;
    int ell = 0;
    ObjectFamily family;

    bool is_undeletable(int v) const {
        return std::binary_search(undeletable.begin(), undeletable.end(), v);
    }
    std::vector<int> deletable_vertices() const;
    void validate() const;  // throws std::invalid_argument on violated invariants
};

struct Verdict {
    bool yes = false;
    std::optional<std::vector<int>> witness;  // sorted deletion set, YES only

    static Verdict no() { return {false, std::nullopt}; }
    static Verdict yes_with(std::vector<int> w);
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Instance text format (see README): 'n' first, then 'e u v', 'u v', 'k', 'l',
// 'family ...' directives, '#' comments.
Instance parse_instance(std::istream &in);
Instance parse_instance_string(const std::string &text);
Instance parse_instance_file(const std::string &path);
std::string emit_instance(const Instance &inst);

}  // namespace hitpack
