#pragma once

// Brute-force reference implementations. They share nothing with the library
// beyond the Graph container, and favour obviously-correct loops over speed.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "robemb/graph.hpp"

namespace oracle {

using robemb::Graph;
using robemb::Vertex;

struct Fraction {
    std::int64_t num = 0, den = 1;
};

inline Fraction reduce(std::int64_t num, std::int64_t den) {
    std::int64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    return {num / g, den / g};
}

inline std::vector<std::uint32_t> masks(const Graph& g) {
    std::vector<std::uint32_t> m(g.order(), 0);
    for (auto [u, v] : g.edges()) {
        m[u] |= 1u << v;
        m[v] |= 1u << u;
    }
    return m;
}

// max over vertex sets U with |U| >= 2 of e(H[U]) / (|U| - 1), by trying every U.
inline Fraction max_one_density(const Graph& h) {
    const int n = h.order();
    auto adj = masks(h);
    Fraction best{0, 1};
    for (std::uint32_t u = 0; u < (1u << n); ++u) {
        int k = std::popcount(u);
        if (k < 2) continue;
        std::int64_t e = 0;
        for (int v = 0; v < n; ++v)
            if (u >> v & 1) e += std::popcount(adj[v] & u);
        e /= 2;
        if (e * best.den > best.num * (k - 1)) best = reduce(e, k - 1);
    }
    return best;
}

inline std::int64_t count_edges_between(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::int64_t e = 0;
    for (Vertex x : a)
        for (Vertex y : b)
            if (g.adjacent(x, y)) ++e;
    return e;
}

// Does some bijection V(H) -> V(G) map every edge of H onto an edge of G?
inline bool contains_spanning(const Graph& g, const Graph& h) {
    std::vector<Vertex> p(g.order());
    std::iota(p.begin(), p.end(), 0);
    const auto he = h.edges();
    do {
        bool ok = true;
        for (auto [x, y] : he)
            if (!g.adjacent(p[x], p[y])) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Perfect matching in a balanced bipartite graph given as an adjacency matrix
// adj[a][b], by trying every permutation (a positive permanent).
inline bool has_perfect_matching(const std::vector<std::vector<char>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = adj[a][p[a]] != 0;
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// (eps,d)-regularity with the d(A,B) >= d - eps convention, by enumerating
// every qualifying pair of subsets. Parts of at most 12 vertices.
inline bool is_regular(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b, double eps,
                       double d) {
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    std::vector<std::uint32_t> row(na, 0);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            if (g.adjacent(a[i], b[j])) row[i] |= 1u << j;
    std::int64_t total = 0;
    for (auto r : row) total += std::popcount(r);
    const double dens = static_cast<double>(total) / (na * nb);
    if (dens < d - eps - 1e-9) return false;
    for (std::uint32_t sa = 1; sa < (1u << na); ++sa) {
        const int ka = std::popcount(sa);
        if (ka < eps * na - 1e-9) continue;
        for (std::uint32_t sb = 1; sb < (1u << nb); ++sb) {
            const int kb = std::popcount(sb);
            if (kb < eps * nb - 1e-9) continue;
            std::int64_t e = 0;
            for (int i = 0; i < na; ++i)
                if (sa >> i & 1) e += std::popcount(row[i] & sb);
            if (std::abs(static_cast<double>(e) / (ka * kb) - dens) > eps + 1e-9) return false;
        }
    }
    return true;
}

// All-pairs distances by Floyd-Warshall; -1 for unreachable.
inline std::vector<std::vector<int>> distances(const Graph& h) {
    const int n = h.order(), inf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (auto [u, v] : h.edges()) d[u][v] = d[v][u] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& r : d)
        for (auto& x : r)
            if (x >= inf) x = -1;
    return d;
}

// Can V(G) be split into vertex-disjoint copies of K_r?
inline bool has_clique_factor(const Graph& g, int r) {
    const int n = g.order();
    if (n % r) return false;
    std::vector<char> used(n, 0);
    std::function<bool()> rec = [&]() -> bool {
        int first = -1;
        for (int v = 0; v < n; ++v)
            if (!used[v]) {
                first = v;
                break;
            }
        if (first < 0) return true;
        std::vector<int> pool;
        for (int v = first + 1; v < n; ++v)
            if (!used[v] && g.adjacent(first, v)) pool.push_back(v);
        std::vector<int> pick;
        std::function<bool(std::size_t)> choose = [&](std::size_t from) -> bool {
            if (static_cast<int>(pick.size()) == r - 1) {
                used[first] = 1;
                for (int v : pick) used[v] = 1;
                bool ok = rec();
                used[first] = 0;
                for (int v : pick) used[v] = 0;
                return ok;
            }
            for (std::size_t i = from; i < pool.size(); ++i) {
                bool ok = std::all_of(pick.begin(), pick.end(), [&](int w) { return g.adjacent(w, pool[i]); });
                if (!ok) continue;
                pick.push_back(pool[i]);
                if (choose(i + 1)) return true;
                pick.pop_back();
            }
            return false;
        };
        return choose(0);
    };
    return rec();
}

inline bool is_clique(const Graph& g, const std::vector<Vertex>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!g.adjacent(s[i], s[j])) return false;
    return true;
}

// Does H have a proper colouring with k classes whose sizes differ by at most one?
inline bool has_equitable_coloring(const Graph& h, int k) {
    const int n = h.order();
    std::vector<int> colour(n, -1), size(k, 0);
    const int big = (n + k - 1) / k;
    const int n_big = n % k == 0 ? k : n % k;
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == n) {
            int bigs = 0;
            for (int c = 0; c < k; ++c) {
                if (size[c] != big && size[c] != n / k) return false;
                if (size[c] == big) ++bigs;
            }
            return n % k == 0 || bigs == n_big;
        }
        for (int c = 0; c < k; ++c) {
            if (size[c] >= big) continue;
            bool ok = true;
            for (Vertex w : h.neighbors(v))
                if (w < v && colour[w] == c) ok = false;
            if (!ok) continue;
            colour[v] = c;
            ++size[c];
            if (rec(v + 1)) return true;
            --size[c];
            colour[v] = -1;
        }
        return false;
    };
    return rec(0);
}

}  // namespace oracle
