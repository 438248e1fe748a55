#include "robemb/containment.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "robemb/general_matching.hpp"

namespace robemb {

std::string to_string(Containment c) {
    switch (c) {
        case Containment::yes: return "yes";
        case Containment::no: return "no";
        case Containment::timeout: return "timeout";
    }
    return "?";
}

namespace {

struct Budget {
    std::int64_t used = 0;
    std::int64_t limit = 0;
    bool out = false;
    bool tick() {
        if (++used > limit) out = true;
        return !out;
    }
};

bool degrees_dominated(const Graph& g, const Graph& h) {
    std::vector<int> dg, dh;
    for (Vertex v = 0; v < g.order(); ++v) dg.push_back(g.degree(v));
    for (Vertex v = 0; v < h.order(); ++v) dh.push_back(h.degree(v));
    std::sort(dg.rbegin(), dg.rend());
    std::sort(dh.rbegin(), dh.rend());
    for (std::size_t i = 0; i < dh.size(); ++i)
        if (dh[i] > dg[i]) return false;
    return true;
}

ContainmentResult by_matching(const Graph& g, const Graph& h) {
    ContainmentResult res;
    res.method = "matching";
    auto mate = maximum_general_matching(g);
    std::vector<Edge> matched;
    for (Vertex v = 0; v < g.order(); ++v)
        if (mate[v] > v) matched.emplace_back(v, mate[v]);
    const auto hedges = h.edges();
    if (matched.size() < hedges.size()) {
        res.status = Containment::no;
        return res;
    }
    res.embedding.assign(h.order(), -1);
    std::vector<char> used(g.order(), 0);
    for (std::size_t i = 0; i < hedges.size(); ++i) {
        res.embedding[hedges[i].first] = matched[i].first;
        res.embedding[hedges[i].second] = matched[i].second;
        used[matched[i].first] = used[matched[i].second] = 1;
    }
    Vertex next = 0;
    for (Vertex x = 0; x < h.order(); ++x)
        if (res.embedding[x] < 0) {
            while (used[next]) ++next;
            res.embedding[x] = next;
            used[next] = 1;
        }
    res.status = Containment::yes;
    return res;
}

// Size r if every component of h is a copy of K_r with r >= 3, else 0.
int clique_factor_size(const Graph& h) {
    auto comps = h.components();
    if (comps.empty()) return 0;
    const std::size_t r = comps.front().size();
    if (r < 3) return 0;
    for (const auto& c : comps) {
        if (c.size() != r) return 0;
        for (Vertex v : c)
            if (h.degree(v) != static_cast<int>(r) - 1) return 0;
    }
    return static_cast<int>(r);
}

ContainmentResult by_exact_cover(const Graph& g, const Graph& h, int r, Budget& budget) {
    ContainmentResult res;
    res.method = "clique-cover";
    const int n = g.order();
    Bitset uncovered(n);
    uncovered.set_all();
    std::vector<std::vector<Vertex>> chosen;
    std::vector<Vertex> clique;

    std::function<bool()> cover;
    std::function<bool(Bitset)> extend = [&](Bitset cand) -> bool {
        if (static_cast<int>(clique.size()) == r) {
            for (Vertex v : clique) uncovered.reset(v);
            chosen.push_back(clique);
            if (cover()) return true;
            chosen.pop_back();
            for (Vertex v : clique) uncovered.set(v);
            return false;
        }
        for (int w = cand.first(); w >= 0; w = cand.next(w + 1)) {
            if (!budget.tick()) return false;
            Bitset next = cand;
            next &= g.row(w);
            for (int u = next.first(); u >= 0 && u <= w; u = next.next(u + 1)) next.reset(u);
            if (next.count() < r - 1 - static_cast<int>(clique.size())) continue;
            clique.push_back(w);
            bool done = extend(next);
            clique.pop_back();
            if (done || budget.out) return done;
        }
        return false;
    };
    std::vector<std::vector<Vertex>> levels;
    cover = [&]() -> bool {
        if (!uncovered.any()) return true;
        if (!budget.tick()) return false;
        Vertex pick = -1;
        int best = n + 1;
        uncovered.for_each([&](int v) {
            int d = g.row(v).count_and(uncovered);
            if (d < best) {
                best = d;
                pick = v;
            }
        });
        if (best < r - 1) return false;
        Bitset cand = g.row(pick);
        cand &= uncovered;
        levels.push_back(clique);
        clique.assign(1, pick);
        bool ok = extend(cand);
        clique = levels.back();
        levels.pop_back();
        return ok;
    };

    bool found = cover();
    if (budget.out) {
        res.status = Containment::timeout;
        return res;
    }
    if (!found) {
        res.status = Containment::no;
        return res;
    }
    res.status = Containment::yes;
    res.embedding.assign(h.order(), -1);
    auto comps = h.components();
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (int j = 0; j < r; ++j) res.embedding[comps[i][j]] = chosen[i][j];
    return res;
}

ContainmentResult by_backtracking(const Graph& g, const Graph& h, Budget& budget) {
    ContainmentResult res;
    res.method = "backtracking";
    const int n = h.order();
    // Order: repeatedly the vertex with most placed neighbours, then highest degree.
    std::vector<Vertex> order;
    std::vector<char> placed(n, 0);
    std::vector<int> placed_nbrs(n, 0);
    std::vector<Vertex> isolated;
    for (Vertex x = 0; x < n; ++x)
        if (h.degree(x) == 0) {
            isolated.push_back(x);
            placed[x] = 1;
        }
    while (order.size() + isolated.size() < static_cast<std::size_t>(n)) {
        Vertex best = -1;
        for (Vertex x = 0; x < n; ++x) {
            if (placed[x]) continue;
            if (best < 0 || placed_nbrs[x] > placed_nbrs[best] ||
                (placed_nbrs[x] == placed_nbrs[best] && h.degree(x) > h.degree(best)))
                best = x;
        }
        placed[best] = 1;
        order.push_back(best);
        for (Vertex w : h.neighbors(best)) ++placed_nbrs[w];
    }

    std::vector<Bitset> degree_ok(h.max_degree() + 1, Bitset(g.order()));
    for (int d = 0; d <= h.max_degree(); ++d)
        for (Vertex v = 0; v < g.order(); ++v)
            if (g.degree(v) >= d) degree_ok[d].set(v);

    std::vector<Vertex> phi(n, -1);
    Bitset used(g.order());
    auto domain = [&](Vertex x) {
        Bitset dom = degree_ok[h.degree(x)];
        dom.subtract(used);
        for (Vertex y : h.neighbors(x))
            if (phi[y] >= 0) dom &= g.row(phi[y]);
        return dom;
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == order.size()) return true;
        const Vertex x = order[i];
        Bitset cand = domain(x);
        for (int v = cand.first(); v >= 0; v = cand.next(v + 1)) {
            if (!budget.tick()) return false;
            phi[x] = v;
            used.set(v);
            bool alive = true;
            for (Vertex w : h.neighbors(x))
                if (phi[w] < 0 && !domain(w).any()) {
                    alive = false;
                    break;
                }
            if (alive && rec(i + 1)) return true;
            used.reset(v);
            phi[x] = -1;
            if (budget.out) return false;
        }
        return false;
    };
    bool found = rec(0);
    if (budget.out) {
        res.status = Containment::timeout;
        return res;
    }
    if (!found) {
        res.status = Containment::no;
        return res;
    }
    int next = 0;
    for (Vertex x : isolated) {
        while (used.test(next)) ++next;
        phi[x] = next;
        used.set(next);
    }
    res.status = Containment::yes;
    res.embedding = std::move(phi);
    return res;
}

}  // namespace

ContainmentResult contains_spanning(const Graph& g, const Graph& h, std::int64_t budget_nodes) {
    if (g.order() != h.order()) throw std::invalid_argument("containment: G and H must have the same order");
    if (budget_nodes < 1) throw std::invalid_argument("containment: budget must be positive");
    ContainmentResult res;
    if (h.size() > g.size() || h.max_degree() > g.max_degree() || !degrees_dominated(g, h)) {
        res.status = Containment::no;
        res.method = "degree-count";
        return res;
    }
    if (h.max_degree() <= 1) return by_matching(g, h);
    Budget budget{0, budget_nodes, false};
    ContainmentResult out;
    if (int r = clique_factor_size(h); r > 0)
        out = by_exact_cover(g, h, r, budget);
    else
        out = by_backtracking(g, h, budget);
    out.nodes = budget.used;
    return out;
}

}  // namespace robemb
