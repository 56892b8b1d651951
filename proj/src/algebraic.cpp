#include "hitpack/algebraic.hpp"

#include <cassert>
#include <random>
#include <set>
#include <stdexcept>

#include "hitpack/matching.hpp"

namespace hitpack {

namespace {

// 2^61 - 1; far above the 2n^2 lower bound the error analysis needs.
constexpr std::uint64_t kPrime = 2305843009213693951ull;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % kPrime);
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

// Determinant over the prime field by Gaussian elimination.
std::uint64_t det_mod(std::vector<std::vector<std::uint64_t>> m) {
    const std::size_t n = m.size();
    std::uint64_t det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = submod(0, det);
        }
        det = mulmod(det, m[col][col]);
        std::uint64_t inv = invmod(m[col][col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            std::uint64_t factor = mulmod(m[row][col], inv);
            for (std::size_t c2 = col; c2 < n; ++c2)
                m[row][c2] = submod(m[row][c2], mulmod(factor, m[col][c2]));
        }
    }
    return det;
}

}  // namespace

MatchFunction match_function(const Graph &g, int k) {
    if (k > g.n) throw std::invalid_argument("match_function: k exceeds vertex count");
    if (k < 0 || k > 20) throw std::invalid_argument("match_function: k out of range");
    MatchFunction mf;
    mf.k = k;
    mf.table.resize(std::size_t{1} << k);
    for (int s = 0; s < (1 << k); ++s) {
        std::vector<int> del;
        for (int v = 0; v < k; ++v)
            if ((s >> v) & 1) del.push_back(v);
        auto [h, remap] = delete_vertices(g, del);
        (void)remap;
        mf.table[s] = matching_number(h);
    }
    return mf;
}

bool has_pm_algebraic(const Graph &g, int trials, std::uint64_t seed) {
    if (g.n % 2 != 0) return false;
    if (g.n == 0) return true;  // the empty matching is perfect
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, kPrime - 1);
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<std::vector<std::uint64_t>> a(g.n, std::vector<std::uint64_t>(g.n, 0));
        for (int i = 0; i < g.n; ++i)
            for (int j : g.adj[i]) {
                if (j <= i) continue;
                std::uint64_t x = dist(rng);
                a[i][j] = x;
                a[j][i] = submod(0, x);
            }
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                assert(a[i][j] == submod(0, a[j][i]) && "Tutte matrix must be skew-symmetric");
        if (det_mod(a) != 0) return true;
    }
    return false;
}

GstarLift gstar_lift(const Graph &g, int k) {
    if (k > g.n) throw std::invalid_argument("gstar_lift: k exceeds vertex count");
    const int d = matching_number(g);
    const int num_new = g.n - 2 * d + 2 * k;
    assert(num_new >= 0);
    std::vector<std::pair<int, int>> edges = g.edges();
    for (int j = 0; j < num_new; ++j)
        for (int v = 0; v < g.n; ++v) edges.emplace_back(v, g.n + j);
    GstarLift out;
    out.gstar = Graph::from_edges(g.n + num_new, edges);
    out.num_new = num_new;
    out.k0 = k + std::min(3 * k, num_new);
    return out;
}

int count_distinct_match_functions(const std::vector<Graph> &family, int k) {
    std::set<std::vector<int>> tables;
    for (const Graph &g : family) tables.insert(match_function(g, k).table);
    return static_cast<int>(tables.size());
}

}  // namespace hitpack
