#include "robemb/density.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "robemb/error.hpp"
#include "robemb/maxflow.hpp"

namespace robemb {

namespace {

void check_vertex_set(const Graph& g, const std::vector<Vertex>& s, std::vector<char>& mark, char tag) {
    for (Vertex v : s) {
        if (v < 0 || v >= g.order()) throw std::invalid_argument("density: vertex out of range");
        if (mark[v] == tag) throw std::invalid_argument("density: repeated vertex");
        if (mark[v] != 0) throw std::invalid_argument("density: vertex sets overlap");
        mark[v] = tag;
    }
}

std::int64_t induced_edges(const Graph& g, const std::vector<Vertex>& s) {
    std::vector<char> in(g.order(), 0);
    for (Vertex v : s) in[v] = 1;
    std::int64_t e = 0;
    for (Vertex v : s)
        for (Vertex w : g.neighbors(v))
            if (in[w] && v < w) ++e;
    return e;
}

// Among the components of g[s], one with one-density at least that of s.
std::vector<Vertex> densest_component(const Graph& g, const std::vector<Vertex>& s) {
    Graph sub = g.induced(s);
    auto comps = sub.components();
    std::vector<Vertex> best;
    Rational best_value(-1);
    for (const auto& c : comps) {
        if (c.size() < 2) continue;
        std::vector<Vertex> orig;
        for (Vertex v : c) orig.push_back(s[v]);
        Rational val(induced_edges(g, orig), static_cast<std::int64_t>(orig.size()) - 1);
        if (val > best_value) {
            best_value = val;
            best = orig;
        }
    }
    if (best.empty()) best = s;
    std::sort(best.begin(), best.end());
    return best;
}

// Exhaustive over all vertex subsets of a graph with at most 26 vertices,
// walking them in Gray-code order so each step updates the edge count in O(1).
OneDensity enumerate_small(const Graph& g) {
    const int c = g.order();
    if (c > 26) throw UnsupportedSize("exhaustive one-density search limited to 26 vertices per component");
    std::vector<std::uint32_t> adj(c, 0);
    for (int v = 0; v < c; ++v)
        for (Vertex w : g.neighbors(v)) adj[v] |= (1U << w);
    std::uint32_t mask = 0;
    std::int64_t edges = 0;
    int size = 0;
    std::int64_t best_num = -1, best_den = 1;
    std::uint32_t best_mask = 0;
    const std::uint64_t total = std::uint64_t{1} << c;
    for (std::uint64_t i = 1; i < total; ++i) {
        int v = std::countr_zero(i);
        std::uint32_t bit = 1U << v;
        if (mask & bit) {
            mask ^= bit;
            edges -= std::popcount(adj[v] & mask);
            --size;
        } else {
            edges += std::popcount(adj[v] & mask);
            mask |= bit;
            ++size;
        }
        if (size < 2) continue;
        if (best_num < 0 || edges * best_den > best_num * (size - 1)) {
            best_num = edges;
            best_den = size - 1;
            best_mask = mask;
        }
    }
    std::vector<Vertex> s;
    for (int v = 0; v < c; ++v)
        if (best_mask & (1U << v)) s.push_back(v);
    OneDensity out{Rational(best_num, best_den), densest_component(g, s)};
    return out;
}

// Dinkelbach iteration on a connected graph. For a guess g = p/q the search
// for a set S with q*e(S) - p*(|S|-1) > 0 is a max-weight closure problem:
// fixing one vertex v of S as the free one makes the -1 exact.
OneDensity flow_connected(const Graph& g) {
    const int c = g.order();
    const auto es = g.edges();
    const int m = static_cast<int>(es.size());
    if (m == 0) return {Rational(0), {0, 1}};
    Rational guess(1);
    std::vector<Vertex> witness{es[0].first, es[0].second};
    while (true) {
        const std::int64_t p = guess.num(), q = guess.den();
        __int128 best_val = 0;
        std::vector<Vertex> best_set;
        for (int free_v = 0; free_v < c; ++free_v) {
            MaxFlow mf(2 + c + m);
            const int s = 0, t = 1;
            for (int i = 0; i < m; ++i) {
                mf.add_edge(s, 2 + c + i, q);
                mf.add_edge(2 + c + i, 2 + es[i].first, MaxFlow::kInfinite);
                mf.add_edge(2 + c + i, 2 + es[i].second, MaxFlow::kInfinite);
            }
            for (int v = 0; v < c; ++v)
                if (v != free_v) mf.add_edge(2 + v, t, p);
            mf.run(s, t);
            auto side = mf.source_side(s);
            std::vector<Vertex> set;
            for (int v = 0; v < c; ++v)
                if (side[2 + v] || v == free_v) set.push_back(v);
            if (set.size() < 2) continue;
            __int128 val = static_cast<__int128>(q) * induced_edges(g, set) -
                           static_cast<__int128>(p) * (static_cast<std::int64_t>(set.size()) - 1);
            if (val > best_val) {
                best_val = val;
                best_set = set;
            }
        }
        if (best_val <= 0) break;
        guess = Rational(induced_edges(g, best_set), static_cast<std::int64_t>(best_set.size()) - 1);
        witness = best_set;
    }
    return {guess, densest_component(g, witness)};
}

OneDensity per_component(const Graph& h, const std::function<OneDensity(const Graph&)>& solve) {
    if (h.order() < 2) throw std::invalid_argument("one-density needs at least two vertices");
    OneDensity best{Rational(-1), {}};
    for (const auto& comp : h.components()) {
        if (comp.size() < 2) continue;
        OneDensity local = solve(h.induced(comp));
        if (local.value > best.value) {
            best.value = local.value;
            best.witness.clear();
            for (Vertex v : local.witness) best.witness.push_back(comp[v]);
            std::sort(best.witness.begin(), best.witness.end());
        }
    }
    if (best.value < Rational(0)) return {Rational(0), {0, 1}};
    return best;
}

}  // namespace

Rational density(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("density: empty vertex set");
    std::vector<char> mark(g.order(), 0);
    check_vertex_set(g, a, mark, 1);
    check_vertex_set(g, b, mark, 2);
    std::int64_t e = 0;
    for (Vertex v : a)
        for (Vertex w : g.neighbors(v))
            if (mark[w] == 2) ++e;
    return Rational(e, static_cast<std::int64_t>(a.size()) * static_cast<std::int64_t>(b.size()));
}

Rational one_density(const Graph& h) {
    if (h.order() < 2) throw std::invalid_argument("one-density needs at least two vertices");
    return Rational(static_cast<std::int64_t>(h.size()), h.order() - 1);
}

OneDensity max_one_density(const Graph& h) {
    return per_component(h, [](const Graph& comp) {
        return comp.order() <= kEnumerationLimit ? enumerate_small(comp) : flow_connected(comp);
    });
}

OneDensity max_one_density_enumerate(const Graph& h) { return per_component(h, enumerate_small); }

OneDensity max_one_density_flow(const Graph& h) { return per_component(h, flow_connected); }

}  // namespace robemb
