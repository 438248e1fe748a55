#include "robemb/partition.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "robemb/error.hpp"
#include "robemb/rng.hpp"

namespace robemb {

namespace {

// A colouring together with per-vertex counts of neighbours in every class.
class Coloring {
public:
    Coloring(const Graph& h, int k)
        : h_(h), k_(k), color_(h.order(), -1), nbr_(static_cast<std::size_t>(h.order()) * k, 0), members_(k) {}

    int k() const { return k_; }
    int color(Vertex v) const { return color_[v]; }
    int nbrs_in(Vertex v, int c) const { return nbr_[static_cast<std::size_t>(v) * k_ + c]; }
    int size(int c) const { return static_cast<int>(members_[c].size()); }
    const std::vector<Vertex>& members(int c) const { return members_[c]; }

    void place(Vertex v, int c) {
        color_[v] = c;
        members_[c].push_back(v);
        for (Vertex w : h_.neighbors(v)) ++nbr_[static_cast<std::size_t>(w) * k_ + c];
    }
    void move(Vertex v, int to) {
        int from = color_[v];
        auto& m = members_[from];
        m.erase(std::find(m.begin(), m.end(), v));
        for (Vertex w : h_.neighbors(v)) --nbr_[static_cast<std::size_t>(w) * k_ + from];
        place(v, to);
    }
    // Number of edges inside classes.
    int conflicts() const {
        int c = 0;
        for (Vertex v = 0; v < h_.order(); ++v) c += nbrs_in(v, color_[v]);
        return c / 2;
    }
    // Lowest vertex of class x with no neighbour in class y, or -1.
    Vertex witness(int x, int y) const {
        Vertex best = -1;
        for (Vertex u : members_[x])
            if (nbrs_in(u, y) == 0 && (best < 0 || u < best)) best = u;
        return best;
    }
    int spread() const {
        int mx = 0, mn = h_.order();
        for (int c = 0; c < k_; ++c) {
            mx = std::max(mx, size(c));
            mn = std::min(mn, size(c));
        }
        return mx - mn;
    }
    Partition classes() const { return members_; }

private:
    const Graph& h_;
    int k_;
    std::vector<int> color_;
    std::vector<int> nbr_;
    std::vector<std::vector<Vertex>> members_;
};

// Each vertex goes to the smallest class holding none of its neighbours.
void greedy(Coloring& col, const Graph& h) {
    for (Vertex v = 0; v < h.order(); ++v) {
        int best = -1;
        for (int c = 0; c < col.k(); ++c)
            if (col.nbrs_in(v, c) == 0 && (best < 0 || col.size(c) < col.size(best))) best = c;
        if (best < 0) throw InvariantViolation("greedy colouring found no free class");
        col.place(v, best);
    }
}

// Repeatedly shift one vertex along a path of classes X0 -> X1 -> ... -> Xt,
// where each arc means some vertex of Xi has no neighbour in Xi+1, from a
// largest class to one at least two smaller. Every shift lowers the sum of
// squared class sizes. Returns false when no such path exists.
bool rebalance_by_moves(Coloring& col) {
    const int k = col.k();
    while (col.spread() > 1) {
        int mx = 0, mn = INT32_MAX;
        for (int c = 0; c < k; ++c) {
            mx = std::max(mx, col.size(c));
            mn = std::min(mn, col.size(c));
        }
        bool shifted = false;
        for (int s = mx; s >= mn + 2 && !shifted; --s) {
            std::vector<int> parent(k, -2);
            std::queue<int> q;
            for (int c = 0; c < k; ++c)
                if (col.size(c) == s) {
                    parent[c] = -1;
                    q.push(c);
                }
            int target = -1;
            while (!q.empty() && target < 0) {
                int x = q.front();
                q.pop();
                for (int y = 0; y < k; ++y) {
                    if (parent[y] != -2 || col.witness(x, y) < 0) continue;
                    parent[y] = x;
                    if (col.size(y) <= s - 2) {
                        target = y;
                        break;
                    }
                    q.push(y);
                }
            }
            if (target < 0) continue;
            std::vector<int> path;
            for (int c = target; c != -1; c = parent[c]) path.push_back(c);
            std::reverse(path.begin(), path.end());
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                Vertex u = col.witness(path[i], path[i + 1]);
                if (u < 0) throw InvariantViolation("move path lost its witness");
                col.move(u, path[i + 1]);
            }
            shifted = true;
        }
        if (!shifted) return false;
    }
    return true;
}

// Tabu search over colourings with equitable sizes, minimising the number of
// monochromatic edges. Moves are swaps between classes and single moves from
// a large class to a small one.
bool local_search(Coloring& col, const Graph& h, std::int64_t max_iters) {
    const int n = h.order(), k = col.k();
    const int lo = n / k, hi = (n + k - 1) / k;
    // First force equitable sizes, ignoring properness.
    while (col.spread() > 1) {
        int big = 0, small = 0;
        for (int c = 0; c < k; ++c) {
            if (col.size(c) > col.size(big)) big = c;
            if (col.size(c) < col.size(small)) small = c;
        }
        Vertex best = -1;
        for (Vertex u : col.members(big))
            if (best < 0 || col.nbrs_in(u, small) < col.nbrs_in(best, small)) best = u;
        col.move(best, small);
    }
    Rng rng(Seed{0x9e3779b9ULL * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(k)});
    std::vector<std::int64_t> tabu(static_cast<std::size_t>(n) * k, -1);
    int conflicts = col.conflicts();
    for (std::int64_t it = 0; it < max_iters && conflicts > 0; ++it) {
        std::vector<Vertex> bad;
        for (Vertex v = 0; v < n; ++v)
            if (col.nbrs_in(v, col.color(v)) > 0) bad.push_back(v);
        Vertex v = bad[rng.index(bad.size())];
        const int x = col.color(v);
        int best_delta = INT32_MAX, ties = 0;
        Vertex best_u = -2;
        int best_y = -1;
        auto consider = [&](int delta, Vertex u, int y) {
            bool is_tabu = tabu[static_cast<std::size_t>(v) * k + y] > it ||
                           (u >= 0 && tabu[static_cast<std::size_t>(u) * k + x] > it);
            if (is_tabu && conflicts + delta > 0) return;
            if (delta < best_delta) {
                best_delta = delta;
                best_u = u;
                best_y = y;
                ties = 1;
            } else if (delta == best_delta && rng.below(++ties) == 0) {
                best_u = u;
                best_y = y;
            }
        };
        for (int y = 0; y < k; ++y) {
            if (y == x) continue;
            if (col.size(x) == hi && col.size(y) == lo && hi > lo)
                consider(col.nbrs_in(v, y) - col.nbrs_in(v, x), -1, y);
            for (Vertex u : col.members(y)) {
                int adj = h.adjacent(u, v) ? 1 : 0;
                int delta = (col.nbrs_in(v, y) - adj) + (col.nbrs_in(u, x) - adj) - col.nbrs_in(v, x) -
                            col.nbrs_in(u, y);
                consider(delta, u, y);
            }
        }
        if (best_y < 0) continue;
        const std::int64_t tenure = it + 7 + static_cast<std::int64_t>(rng.below(10));
        tabu[static_cast<std::size_t>(v) * k + x] = tenure;
        col.move(v, best_y);
        if (best_u >= 0) {
            tabu[static_cast<std::size_t>(best_u) * k + best_y] = tenure;
            col.move(best_u, x);
        }
        conflicts += best_delta;
    }
    return conflicts == 0;
}

// Backtracking with symmetry breaking on class labels; used for tiny graphs.
bool exhaustive(const Graph& h, int k, std::vector<int>& color) {
    const int n = h.order();
    const int lo = n / k, hi = (n + k - 1) / k;
    const int big_allowed = n % k;
    std::vector<int> size(k, 0);
    int big = 0;
    color.assign(n, -1);
    auto rec = [&](auto&& self, int v, int used) -> bool {
        if (v == n) {
            for (int c = 0; c < k; ++c)
                if (size[c] < lo) return false;
            return true;
        }
        for (int c = 0; c < std::min(used + 1, k); ++c) {
            if (size[c] >= hi) continue;
            bool becomes_big = hi > lo && size[c] + 1 == hi;
            if (becomes_big && big >= big_allowed) continue;
            bool clash = false;
            for (Vertex w : h.neighbors(v))
                if (w < v && color[w] == c) clash = true;
            if (clash) continue;
            color[v] = c;
            ++size[c];
            if (becomes_big) ++big;
            if (self(self, v + 1, std::max(used, c + 1))) return true;
            if (becomes_big) --big;
            --size[c];
            color[v] = -1;
        }
        return false;
    };
    return rec(rec, 0, 0);
}

Partition normalized(Partition p) {
    for (auto& c : p) std::sort(c.begin(), c.end());
    std::stable_sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
        if (a.empty() || b.empty()) return !a.empty() && b.empty();
        return a.front() < b.front();
    });
    return p;
}

}  // namespace

bool is_equitable_coloring(const Graph& h, const Partition& p, int k) {
    if (k < 1 || static_cast<int>(p.size()) != k) return false;
    const int n = h.order();
    std::vector<int> cls(n, -1);
    for (int c = 0; c < k; ++c)
        for (Vertex v : p[c]) {
            if (v < 0 || v >= n || cls[v] != -1) return false;
            cls[v] = c;
        }
    for (Vertex v = 0; v < n; ++v)
        if (cls[v] < 0) return false;
    for (auto [u, v] : h.edges())
        if (cls[u] == cls[v]) return false;
    for (const auto& c : p) {
        auto s = static_cast<int>(c.size());
        if (s < n / k || s > (n + k - 1) / k) return false;
    }
    return true;
}

Partition equitable_coloring(const Graph& h, int k) { return equitable_coloring(h, k, nullptr); }

Partition equitable_coloring(const Graph& h, int k, EquitableStage* used) {
    if (k < 1) throw std::invalid_argument("equitable colouring needs at least one class");
    if (k <= h.max_degree())
        throw InfeasibleParameters("equitable colouring needs more classes than the maximum degree (" +
                                   std::to_string(h.max_degree()) + ")");
    Coloring col(h, k);
    greedy(col, h);
    if (rebalance_by_moves(col)) {
        if (used) *used = EquitableStage::greedy;
        auto p = normalized(col.classes());
        if (!is_equitable_coloring(h, p, k)) throw InvariantViolation("greedy stage produced an invalid colouring");
        return p;
    }
    if (h.order() <= 12) {
        std::vector<int> color;
        if (exhaustive(h, k, color)) {
            Partition p(k);
            for (Vertex v = 0; v < h.order(); ++v) p[color[v]].push_back(v);
            p = normalized(p);
            if (used) *used = EquitableStage::exhaustive;
            if (!is_equitable_coloring(h, p, k)) throw InvariantViolation("exhaustive stage produced an invalid colouring");
            return p;
        }
        throw InvariantViolation("no equitable colouring found by exhaustive search");
    }
    const std::int64_t budget = std::max<std::int64_t>(200000, 200LL * h.order() * k);
    if (local_search(col, h, budget)) {
        if (used) *used = EquitableStage::local_search;
        auto p = normalized(col.classes());
        if (!is_equitable_coloring(h, p, k)) throw InvariantViolation("local search produced an invalid colouring");
        return p;
    }
    throw InvariantViolation("equitable colouring: rebalancing and local search both failed");
}

CliqueFactor clique_factor(const Graph& g, int r) {
    if (r < 1) throw std::invalid_argument("clique factor needs r >= 1");
    const int n = g.order();
    if (n > 0 && static_cast<long long>(r) * g.min_degree() < static_cast<long long>(r - 1) * n)
        throw InfeasibleParameters("clique factor needs minimum degree at least ceil((1 - 1/r) n)");
    // Setting aside n mod r vertices keeps the degree condition for the rest,
    // so the complement of the rest can be coloured with (n - q)/r classes,
    // each of size exactly r.
    const int q = n % r;
    std::vector<Vertex> keep(n - q);
    for (int i = 0; i < n - q; ++i) keep[i] = i;
    CliqueFactor out;
    for (int v = n - q; v < n; ++v) out.leftover.push_back(v);
    const int classes = (n - q) / r;
    if (classes > 0) {
        Partition p;
        try {
            p = equitable_coloring(g.induced(keep).complement(), classes);
        } catch (const InfeasibleParameters& e) {
            throw InvariantViolation(std::string("clique factor: complement degree bound failed: ") + e.what());
        }
        for (auto& c : p) {
            if (static_cast<int>(c.size()) != r) throw InvariantViolation("clique factor: class of wrong size");
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j)
                    if (!g.adjacent(c[i], c[j])) throw InvariantViolation("clique factor: class is not a clique");
            out.cliques.push_back(c);
        }
    }
    if (static_cast<int>(out.leftover.size()) > r - 1 && !(r == 1 && out.leftover.empty()))
        throw InvariantViolation("clique factor: too many leftover vertices");
    return out;
}

std::vector<int> bfs_distances(const Graph& h, const std::vector<Vertex>& sources, int limit) {
    std::vector<int> dist(h.order(), -1);
    std::queue<Vertex> q;
    for (Vertex s : sources) {
        if (s < 0 || s >= h.order()) throw std::invalid_argument("bfs: vertex out of range");
        if (dist[s] < 0) {
            dist[s] = 0;
            q.push(s);
        }
    }
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        if (limit >= 0 && dist[v] >= limit) continue;
        for (Vertex w : h.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

Graph distance_power_graph(const Graph& h, int radius) {
    if (radius < 1) throw std::invalid_argument("distance power needs radius >= 1");
    GraphBuilder b(h.order());
    for (Vertex v = 0; v < h.order(); ++v) {
        auto dist = bfs_distances(h, {v}, radius);
        for (Vertex w = v + 1; w < h.order(); ++w)
            if (dist[w] > 0) b.add_edge(v, w);
    }
    return b.build();
}

std::vector<Vertex> closed_second_neighborhood(const Graph& h, Vertex x) {
    auto dist = bfs_distances(h, {x}, 2);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < h.order(); ++v)
        if (dist[v] >= 0) out.push_back(v);
    return out;
}

void write_partition(std::ostream& out, const Partition& p) {
    for (const auto& part : p) {
        for (std::size_t i = 0; i < part.size(); ++i) out << (i ? " " : "") << part[i];
        out << "\n";
    }
}

Partition read_partition(std::istream& in) {
    Partition p;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<Vertex> part;
        long long v;
        while (ls >> v) {
            if (v < 0) throw std::invalid_argument("partition: negative vertex");
            part.push_back(static_cast<Vertex>(v));
        }
        if (!ls.eof()) throw std::invalid_argument("partition: non-numeric token");
        p.push_back(std::move(part));
    }
    return p;
}

}  // namespace robemb
