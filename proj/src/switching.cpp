#include "robemb/switching.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "robemb/error.hpp"

namespace robemb {

PartialEmbedding::PartialEmbedding(const Graph& h, const Graph& g, std::vector<std::pair<Vertex, Vertex>> pairs)
    : pairs_(std::move(pairs)) {
    std::vector<Vertex> phi(h.order(), -1);
    std::vector<char> used(g.order(), 0);
    for (auto [x, v] : pairs_) {
        if (x < 0 || x >= h.order() || v < 0 || v >= g.order())
            throw std::invalid_argument("partial embedding: vertex out of range");
        if (phi[x] != -1) throw std::invalid_argument("partial embedding: vertex mapped twice");
        if (used[v]) throw std::invalid_argument("partial embedding: not injective");
        phi[x] = v;
        used[v] = 1;
    }
    for (auto [x, v] : pairs_)
        for (Vertex y : h.neighbors(x))
            if (phi[y] != -1 && !g.adjacent(v, phi[y]))
                throw std::invalid_argument("partial embedding: edge " + std::to_string(x) + " " +
                                            std::to_string(y) + " is not preserved");
    std::sort(pairs_.begin(), pairs_.end());
}

PartialEmbedding read_partial_embedding(std::istream& in, const Graph& h, const Graph& g) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long x, v;
        std::string extra;
        if (!(ls >> x >> v) || (ls >> extra))
            throw std::invalid_argument("partial embedding line " + std::to_string(lineno) + ": expected 'x v'");
        pairs.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(v));
    }
    return PartialEmbedding(h, g, std::move(pairs));
}

std::size_t mapped_edge_count(const Graph& g, const Graph& h, const std::vector<Vertex>& phi) {
    std::size_t c = 0;
    for (auto [x, y] : h.edges())
        if (g.adjacent(phi[x], phi[y])) ++c;
    return c;
}

bool is_embedding(const Graph& g, const Graph& h, const std::vector<Vertex>& phi) {
    if (static_cast<int>(phi.size()) != h.order()) return false;
    std::vector<char> used(g.order(), 0);
    for (Vertex v : phi) {
        if (v < 0 || v >= g.order() || used[v]) return false;
        used[v] = 1;
    }
    return mapped_edge_count(g, h, phi) == h.size();
}

SwitchResult switching_embed(const Graph& g, const Graph& h, const PartialEmbedding& phi_s, Seed seed) {
    const int n = g.order();
    if (h.order() != n) throw std::invalid_argument("switching embed: H and G must have the same order");
    Rng rng(seed);
    std::vector<Vertex> phi(n, -1), inv(n, -1);
    std::vector<char> in_s(n, 0);
    Bitset free_images(n);
    free_images.set_all();
    for (auto [x, v] : phi_s.pairs()) {
        if (x >= n || v >= n) throw std::invalid_argument("switching embed: partial embedding out of range");
        phi[x] = v;
        inv[v] = x;
        in_s[x] = 1;
        free_images.reset(v);
    }
    std::vector<Vertex> targets;
    free_images.for_each([&](int v) { targets.push_back(v); });
    rng.shuffle(targets);
    std::size_t next = 0;
    for (Vertex x = 0; x < n; ++x)
        if (!in_s[x]) {
            phi[x] = targets[next++];
            inv[phi[x]] = x;
        }

    auto mapped_at = [&](Vertex a, Vertex b) {
        std::size_t c = 0;
        for (Vertex z : h.neighbors(a))
            if (g.adjacent(phi[a], phi[z])) ++c;
        for (Vertex z : h.neighbors(b))
            if (z != a && g.adjacent(phi[b], phi[z])) ++c;
        return c;
    };

    SwitchResult res;
    std::size_t mapped = mapped_edge_count(g, h, phi);
    for (int time = 0;; ++time) {
        Vertex x = -1, xstar = -1;
        for (Vertex u = 0; u < n && x < 0; ++u) {
            if (in_s[u]) continue;
            for (Vertex w : h.neighbors(u))
                if (!g.adjacent(phi[u], phi[w])) {
                    x = u;
                    xstar = w;
                    break;
                }
        }
        if (x < 0) {
            res.status = SwitchResult::Status::success;
            break;
        }
        if (time >= static_cast<int>(h.size())) throw InvariantViolation("switching embed: more swaps than edges");

        // Candidates: y outside S whose image is a common neighbour of phi(N(x))
        // outside the image of S.
        Bitset common = free_images;
        for (Vertex w : h.neighbors(x)) common &= g.row(phi[w]);
        std::vector<Vertex> candidates;
        common.for_each([&](int v) { candidates.push_back(inv[v]); });
        rng.shuffle(candidates);

        Vertex chosen = -1;
        for (Vertex y : candidates) {
            if (y == x || in_s[y]) throw InvariantViolation("switching embed: bad candidate");
            bool breaks = false;
            for (Vertex z : h.neighbors(y))
                if (g.adjacent(phi[y], phi[z]) && !g.adjacent(phi[x], phi[z])) {
                    breaks = true;
                    break;
                }
            if (!breaks) {
                chosen = y;
                break;
            }
        }
        if (chosen < 0) {
            res.status = SwitchResult::Status::stuck;
            break;
        }
        const std::size_t local_before = mapped_at(x, chosen);
        std::swap(phi[x], phi[chosen]);
        inv[phi[x]] = x;
        inv[phi[chosen]] = chosen;
        const std::size_t local_after = mapped_at(x, chosen);
        if (local_after <= local_before) throw InvariantViolation("switching embed: swap did not gain a mapped edge");
        SwitchStep step;
        step.time = time;
        step.x = x;
        step.y = chosen;
        step.repaired = {x, xstar};
        step.mapped_before = mapped;
        mapped = mapped + local_after - local_before;
        step.mapped_after = mapped;
        res.trace.push_back(step);
    }
    res.phi = std::move(phi);
    return res;
}

Rational delta_e_upper_bound(int max_degree) {
    if (max_degree < 1) throw std::invalid_argument("delta_e_upper_bound: maximum degree must be at least 1");
    return Rational(2 * static_cast<std::int64_t>(max_degree) - 1, 2 * static_cast<std::int64_t>(max_degree));
}

bool switching_hypothesis_holds(const Graph& g, int max_degree, double gamma, std::size_t s_size) {
    if (max_degree < 1) return true;
    const double n = g.order();
    if (!(gamma > 0.0 && gamma < 1.0 / (2.0 * max_degree))) return false;
    const double frac = delta_e_upper_bound(max_degree).to_double() + gamma;
    return g.min_degree() >= frac * n - 1e-9 && static_cast<double>(s_size) <= gamma * max_degree * n + 1e-9;
}

void write_embedding(std::ostream& out, const std::vector<Vertex>& phi) {
    for (std::size_t x = 0; x < phi.size(); ++x) out << x << " " << phi[x] << "\n";
}

void write_trace_csv(std::ostream& out, const std::vector<SwitchStep>& trace) {
    out << "step,x,y,repaired_x,repaired_xstar,mapped_before,mapped_after\n";
    for (const auto& s : trace)
        out << s.time << "," << s.x << "," << s.y << "," << s.repaired.first << "," << s.repaired.second << ","
            << s.mapped_before << "," << s.mapped_after << "\n";
}

}  // namespace robemb
