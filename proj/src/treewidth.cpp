#include "hitpack/treewidth.hpp"

#include <cassert>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hitpack/instance.hpp"

namespace hitpack {

namespace {

// Degree of v into the uneliminated part when eliminated right after the set
// `done`: neighbors of v reachable through done vertices.
int elimination_degree(const Graph &g, unsigned done, int v) {
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{v};
    seen[v] = 1;
    int deg = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int w : g.adj[x]) {
            if (seen[w]) continue;
            seen[w] = 1;
            if ((done >> w) & 1)
                stack.push_back(w);
            else
                ++deg;
        }
    }
    return deg;
}

// Elimination-order DP: best[S] = min over orders of S (eliminated first) of
// the max elimination degree. Exact treewidth = best[V].
std::vector<int> exact_elimination_order(const Graph &g) {
    const int n = g.n;
    const unsigned full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<int> best(full + 1, n + 1), choice(full + 1, -1);
    best[0] = -1;
    for (unsigned s = 1; s <= full; ++s) {
        for (int v = 0; v < n; ++v) {
            if (!((s >> v) & 1)) continue;
            unsigned rest = s & ~(1u << v);
            int w = std::max(best[rest], elimination_degree(g, rest, v));
            if (w < best[s]) {
                best[s] = w;
                choice[s] = v;
            }
        }
        if (s == full) break;
    }
    std::vector<int> order;
    unsigned s = full;
    while (s) {
        int v = choice[s];
        order.push_back(v);
        s &= ~(1u << v);
    }
    std::reverse(order.begin(), order.end());
    return order;
}

std::vector<int> min_fill_order(const Graph &g) {
    // Greedy elimination on a working adjacency-matrix copy.
    const int n = g.n;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v)
        for (int w : g.adj[v]) adj[v][w] = 1;
    std::vector<char> gone(n, 0);
    std::vector<int> order;
    for (int step = 0; step < n; ++step) {
        int bestv = -1;
        long bestfill = -1;
        for (int v = 0; v < n; ++v) {
            if (gone[v]) continue;
            std::vector<int> nb;
            for (int w = 0; w < n; ++w)
                if (!gone[w] && adj[v][w]) nb.push_back(w);
            long fill = 0;
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]][nb[j]]) ++fill;
            if (bestv < 0 || fill < bestfill) {
                bestv = v;
                bestfill = fill;
            }
        }
        order.push_back(bestv);
        gone[bestv] = 1;
        std::vector<int> nb;
        for (int w = 0; w < n; ++w)
            if (!gone[w] && adj[bestv][w]) nb.push_back(w);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
    }
    return order;
}

// Gavril-style bag construction from an elimination order.
TreeDecomposition decomposition_from_order(const Graph &g, const std::vector<int> &order) {
    const int n = g.n;
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<int> position(n);
    for (int i = 0; i < n; ++i) position[order[i]] = i;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v)
        for (int w : g.adj[v]) adj[v][w] = 1;

    std::vector<int> bag_of(n);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> later;
        for (int w = 0; w < n; ++w)
            if (adj[v][w] && position[w] > i) later.push_back(w);
        std::vector<int> bag = later;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        bag_of[v] = static_cast<int>(td.bags.size());
        td.bags.push_back(bag);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b)
                adj[later[a]][later[b]] = adj[later[b]][later[a]] = 1;
    }
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        // Attach to the bag of the earliest-later fill neighbor; if none
        // (last vertex of a component), attach to the next bag to keep one tree.
        int parent = -1;
        for (int w = 0; w < n; ++w)
            if (adj[v][w] && position[w] > i && (parent < 0 || position[w] < position[parent]))
                parent = w;
        if (parent >= 0)
            td.tree_edges.emplace_back(bag_of[v], bag_of[parent]);
        else if (i + 1 < n)
            td.tree_edges.emplace_back(bag_of[v], bag_of[order[i + 1]]);
    }
    return td;
}

}  // namespace

TreeDecomposition compute_decomposition(const Graph &g) {
    std::vector<int> order = g.n <= 16 ? exact_elimination_order(g) : min_fill_order(g);
    TreeDecomposition td = decomposition_from_order(g, order);
    assert(validate_decomposition(td, g));
    return td;
}

bool validate_decomposition(const TreeDecomposition &td, const Graph &g, std::string *why) {
    auto fail = [&](const std::string &msg) {
        if (why) *why = msg;
        return false;
    };
    const int b = static_cast<int>(td.bags.size());
    if (b == 0) return fail("no bags");
    for (const auto &bag : td.bags) {
        if (!std::is_sorted(bag.begin(), bag.end())) return fail("bag not sorted");
        if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            return fail("duplicate vertex in bag");
        for (int v : bag)
            if (v < 0 || v >= g.n) return fail("bag vertex out of range");
    }
    // Tree check.
    if (static_cast<int>(td.tree_edges.size()) != b - 1) return fail("bag graph is not a tree");
    {
        std::vector<std::vector<int>> adj(b);
        for (auto [x, y] : td.tree_edges) {
            if (x < 0 || x >= b || y < 0 || y >= b) return fail("tree edge out of range");
            adj[x].push_back(y);
            adj[y].push_back(x);
        }
        std::vector<char> seen(b, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    stack.push_back(y);
                }
        }
        if (cnt != b) return fail("bag graph disconnected");
    }
    // Vertex coverage and connectivity of each vertex's bag set.
    std::vector<std::vector<int>> bags_of(g.n);
    for (int i = 0; i < b; ++i)
        for (int v : td.bags[i]) bags_of[v].push_back(i);
    std::vector<std::vector<int>> adj(b);
    for (auto [x, y] : td.tree_edges) {
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    for (int v = 0; v < g.n; ++v) {
        if (bags_of[v].empty()) return fail("vertex missing from all bags");
        std::set<int> member(bags_of[v].begin(), bags_of[v].end());
        std::vector<char> seen(b, 0);
        std::vector<int> stack{bags_of[v][0]};
        seen[bags_of[v][0]] = 1;
        std::size_t cnt = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (member.count(y) && !seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    stack.push_back(y);
                }
        }
        if (cnt != member.size()) return fail("vertex bags not connected");
    }
    // Edge coverage.
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (const auto &bag : td.bags)
            if (std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v)) {
                covered = true;
                break;
            }
        if (!covered) return fail("edge not covered by any bag");
    }
    return true;
}

std::vector<int> NiceDecomposition::post_order() const {
    std::vector<int> out;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto &[node, next] = stack.back();
        if (next < nodes[node].children.size()) {
            int child = nodes[node].children[next++];
            stack.emplace_back(child, 0);
        } else {
            out.push_back(node);
            stack.pop_back();
        }
    }
    return out;
}

namespace {

struct NiceBuilder {
    const Graph &g;
    bool with_edges;
    std::vector<NiceNode> nodes;
    std::set<std::pair<int, int>> edges_placed;

    int add(NiceNode n) {
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size()) - 1;
    }

    // Stack IntroduceEdge nodes for any unplaced edge between v and the rest
    // of the bag; returns the new top node.
    int place_edges(int top, int v) {
        if (!with_edges) return top;
        std::vector<int> bag = nodes[top].bag;
        for (int u : bag) {
            if (u == v || !g.has_edge(u, v)) continue;
            auto key = std::minmax(u, v);
            if (edges_placed.count(key)) continue;
            edges_placed.insert(key);
            top = add({NiceNode::Kind::IntroduceEdge, key.second, key.first, bag, {top}});
        }
        return top;
    }

    int introduce(int top, int v) {
        std::vector<int> bag = nodes[top].bag;
        bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
        top = add({NiceNode::Kind::IntroduceVertex, v, -1, std::move(bag), {top}});
        return place_edges(top, v);
    }

    int forget(int top, int v) {
        std::vector<int> bag = nodes[top].bag;
        bag.erase(std::find(bag.begin(), bag.end(), v));
        return add({NiceNode::Kind::Forget, v, -1, std::move(bag), {top}});
    }

    // Chain transforming the bag at `top` into `target`: forgets first
    // (ascending), then introduces (ascending).
    int transform(int top, const std::vector<int> &target) {
        std::vector<int> drop, take;
        std::set_difference(nodes[top].bag.begin(), nodes[top].bag.end(), target.begin(),
                            target.end(), std::back_inserter(drop));
        std::set_difference(target.begin(), target.end(), nodes[top].bag.begin(),
                            nodes[top].bag.end(), std::back_inserter(take));
        for (int v : drop) top = forget(top, v);
        for (int v : take) top = introduce(top, v);
        return top;
    }

    int leaf_chain(const std::vector<int> &target) {
        int top = add({NiceNode::Kind::Leaf, -1, -1, {}, {}});
        return transform(top, target);
    }

    // Builds the subtree for decomposition bag `t`, returning a node with that
    // bag.
    int build(const TreeDecomposition &td, const std::vector<std::vector<int>> &children, int t) {
        const auto &bag = td.bags[t];
        if (children[t].empty()) return leaf_chain(bag);
        std::vector<int> tops;
        for (int c : children[t]) tops.push_back(transform(build(td, children, c), bag));
        while (tops.size() > 1) {
            int right = tops.back();
            tops.pop_back();
            int left = tops.back();
            tops.pop_back();
            tops.push_back(add({NiceNode::Kind::Join, -1, -1, bag, {left, right}}));
        }
        return tops[0];
    }
};

}  // namespace

NiceDecomposition make_nice(const TreeDecomposition &td_in, const Graph &g, bool with_edges) {
    std::string why;
    if (!validate_decomposition(td_in, g, &why))
        throw std::invalid_argument("make_nice: invalid decomposition: " + why);
    TreeDecomposition td = td_in;
    if (td.bags.empty()) td.bags.push_back({});

    const int b = static_cast<int>(td.bags.size());
    std::vector<std::vector<int>> adj(b), children(b);
    for (auto [x, y] : td.tree_edges) {
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    // Root at bag 0; orient.
    std::vector<int> parent(b, -2), order;
    parent[0] = -1;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int x = order[i];
        for (int y : adj[x])
            if (parent[y] == -2) {
                parent[y] = x;
                children[x].push_back(y);
                order.push_back(y);
            }
    }

    NiceBuilder nb{g, with_edges, {}, {}};
    int top = nb.build(td, children, 0);
    top = nb.transform(top, {});  // forget everything; root bag empty

    NiceDecomposition nd;
    nd.nodes = std::move(nb.nodes);
    nd.root = top;
    nd.with_edges = with_edges;
    if (with_edges) assert(nb.edges_placed.size() == static_cast<std::size_t>(g.edge_count()));
    assert(validate_nice(nd, g));
    assert(nd.width() == td_in.width() || td_in.bags.empty());
    return nd;
}

bool validate_nice(const NiceDecomposition &nd, const Graph &g, std::string *why) {
    auto fail = [&](const std::string &msg) {
        if (why) *why = msg;
        return false;
    };
    if (nd.root < 0 || nd.root >= static_cast<int>(nd.nodes.size())) return fail("bad root");
    if (!nd.nodes[nd.root].bag.empty()) return fail("root bag not empty");
    std::set<std::pair<int, int>> edges_seen;
    for (const auto &node : nd.nodes) {
        using K = NiceNode::Kind;
        switch (node.kind) {
            case K::Leaf:
                if (!node.children.empty() || !node.bag.empty()) return fail("bad leaf");
                break;
            case K::IntroduceVertex: {
                if (node.children.size() != 1) return fail("introduce-vertex arity");
                auto child = nd.nodes[node.children[0]].bag;
                child.insert(std::upper_bound(child.begin(), child.end(), node.v), node.v);
                if (child != node.bag) return fail("introduce-vertex bag mismatch");
                break;
            }
            case K::Forget: {
                if (node.children.size() != 1) return fail("forget arity");
                auto child = nd.nodes[node.children[0]].bag;
                auto it = std::find(child.begin(), child.end(), node.v);
                if (it == child.end()) return fail("forgotten vertex not in child bag");
                child.erase(it);
                if (child != node.bag) return fail("forget bag mismatch");
                break;
            }
            case K::IntroduceEdge: {
                if (node.children.size() != 1) return fail("introduce-edge arity");
                if (nd.nodes[node.children[0]].bag != node.bag)
                    return fail("introduce-edge bag mismatch");
                if (!g.has_edge(node.u, node.v)) return fail("introduced edge not in graph");
                if (!std::binary_search(node.bag.begin(), node.bag.end(), node.u) ||
                    !std::binary_search(node.bag.begin(), node.bag.end(), node.v))
                    return fail("introduced edge endpoints not in bag");
                if (!edges_seen.insert(std::minmax(node.u, node.v)).second)
                    return fail("edge introduced twice");
                break;
            }
            case K::Join: {
                if (node.children.size() != 2) return fail("join arity");
                for (int c : node.children)
                    if (nd.nodes[c].bag != node.bag) return fail("join bag mismatch");
                break;
            }
        }
    }
    if (nd.with_edges && edges_seen.size() != static_cast<std::size_t>(g.edge_count()))
        return fail("some edge never introduced");
    if (!nd.with_edges && !edges_seen.empty()) return fail("unexpected introduce-edge node");
    // Underlying decomposition must still be valid.
    TreeDecomposition td;
    for (const auto &node : nd.nodes) td.bags.push_back(node.bag);
    for (std::size_t i = 0; i < nd.nodes.size(); ++i)
        for (int c : nd.nodes[i].children) td.tree_edges.emplace_back(static_cast<int>(i), c);
    return validate_decomposition(td, g, why);
}

TreeDecomposition parse_td(std::istream &in, int expected_n) {
    TreeDecomposition td;
    int num_bags = -1, declared_n = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string head;
        if (!(ss >> head) || head == "c") continue;
        if (head == "s") {
            std::string tag;
            int maxbag;
            if (!(ss >> tag >> num_bags >> maxbag >> declared_n) || tag != "td")
                throw ParseError(lineno, "malformed s-line");
            if (expected_n >= 0 && declared_n != expected_n)
                throw ParseError(lineno, "vertex count mismatch");
            td.bags.assign(num_bags, {});
        } else if (head == "b") {
            if (num_bags < 0) throw ParseError(lineno, "b-line before s-line");
            int id;
            if (!(ss >> id) || id < 1 || id > num_bags) throw ParseError(lineno, "bad bag id");
            int v;
            std::vector<int> bag;
            while (ss >> v) {
                if (v < 1 || v > declared_n)
                    throw ParseError(lineno, "bag vertex out of range");
                bag.push_back(v - 1);
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            td.bags[id - 1] = std::move(bag);
        } else {
            if (num_bags < 0) throw ParseError(lineno, "edge line before s-line");
            int x = 0, y;
            try {
                x = std::stoi(head);
            } catch (...) {
                throw ParseError(lineno, "unknown line '" + head + "'");
            }
            if (!(ss >> y)) throw ParseError(lineno, "malformed tree edge");
            if (x < 1 || x > num_bags || y < 1 || y > num_bags)
                throw ParseError(lineno, "tree edge out of range");
            td.tree_edges.emplace_back(x - 1, y - 1);
        }
    }
    if (num_bags < 0) throw ParseError(lineno, "missing s-line");
    return td;
}

TreeDecomposition parse_td_string(const std::string &text, int expected_n) {
    std::istringstream ss(text);
    return parse_td(ss, expected_n);
}

std::string emit_td(const TreeDecomposition &td, int n) {
    std::ostringstream out;
    int maxbag = 0;
    for (const auto &b : td.bags) maxbag = std::max(maxbag, static_cast<int>(b.size()));
    out << "s td " << td.bags.size() << " " << maxbag << " " << n << "\n";
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << (i + 1);
        for (int v : td.bags[i]) out << " " << (v + 1);
        out << "\n";
    }
    for (auto [x, y] : td.tree_edges) out << (x + 1) << " " << (y + 1) << "\n";
    return out.str();
}

}  // namespace hitpack
