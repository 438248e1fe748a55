#include "robemb/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robemb/error.hpp"
#include "robemb/partition.hpp"
#include "robemb/switching.hpp"

namespace robemb {

namespace {

std::vector<std::vector<Vertex>> rprime_cliques(const Graph& rprime, int min_size) {
    std::vector<std::vector<Vertex>> clique_of(rprime.order());
    for (const auto& comp : rprime.components()) {
        for (std::size_t a = 0; a < comp.size(); ++a)
            for (std::size_t b = a + 1; b < comp.size(); ++b)
                if (!rprime.adjacent(comp[a], comp[b]))
                    throw std::invalid_argument("partition pattern: R' components must be cliques");
        if (static_cast<int>(comp.size()) < min_size)
            throw std::invalid_argument("partition pattern: R' cliques need at least max degree + 1 nodes");
        for (Vertex i : comp) clique_of[i] = comp;
    }
    return clique_of;
}

}  // namespace

PartitionedPattern partition_pattern(const Graph& h, const PartitionedHost& host,
                                     const std::vector<std::vector<Vertex>>& xstar, double alpha, Seed seed,
                                     const PartitionOptions& opts) {
    const int n = h.order();
    const int k = static_cast<int>(host.clusters.size());
    if (n != host.g.order()) throw std::invalid_argument("partition pattern: H and G differ in order");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("partition pattern: alpha must lie in (0,1]");
    if (!xstar.empty() && static_cast<int>(xstar.size()) != k)
        throw std::invalid_argument("partition pattern: X* needs one (possibly empty) set per cluster");
    const int max_deg = h.max_degree();
    const auto clique_of = rprime_cliques(host.rprime, max_deg + 1);

    std::vector<int> target(n, -1);
    std::vector<Vertex> xstar_all;
    for (int i = 0; i < static_cast<int>(xstar.size()); ++i)
        for (Vertex v : xstar[i]) {
            if (v < 0 || v >= n) throw std::invalid_argument("partition pattern: X* vertex out of range");
            if (target[v] != -1) throw std::invalid_argument("partition pattern: X* vertex listed twice");
            target[v] = i;
            xstar_all.push_back(v);
        }

    // Step I: buffer candidates, pairwise more than 5 apart and more than 3 from X*.
    std::vector<Vertex> far;
    {
        auto dist = xstar_all.empty() ? std::vector<int>(n, -1) : bfs_distances(h, xstar_all);
        for (Vertex v = 0; v < n; ++v)
            if (dist[v] < 0 || dist[v] > 3) far.push_back(v);
    }
    if (far.empty()) throw PartitionFailed("partition pattern: no vertex is far enough from X*");
    Graph power = distance_power_graph(h, 5).induced(far);
    const int classes = opts.buffer_classes > 0 ? opts.buffer_classes : power.max_degree() + 1;
    Partition coloring = equitable_coloring(power, classes);
    std::size_t pick = 0;
    for (std::size_t c = 1; c < coloring.size(); ++c)
        if (coloring[c].size() > coloring[pick].size()) pick = c;
    std::vector<Vertex> base;
    for (Vertex local : coloring[pick]) base.push_back(far[local]);
    std::sort(base.begin(), base.end());

    PartitionedPattern out;
    out.h = h;
    out.alpha = alpha;
    out.max_degree = max_deg;
    out.buffers.resize(k);
    std::size_t next = 0;
    for (int i = 0; i < k; ++i) {
        const auto need = static_cast<std::size_t>(std::ceil(alpha * host.clusters[i].size() - 1e-9));
        if (next + need > base.size())
            throw PartitionFailed("partition pattern: only " + std::to_string(base.size()) +
                                  " buffer candidates for the requested alpha");
        out.buffers[i].assign(base.begin() + static_cast<std::ptrdiff_t>(next),
                              base.begin() + static_cast<std::ptrdiff_t>(next + need));
        next += need;
    }

    // Step II: spread each buffer's second neighbourhood over its R' clique.
    std::vector<std::size_t> load(k, 0);
    for (Vertex v = 0; v < n; ++v)
        if (target[v] >= 0) ++load[target[v]];
    for (int i = 0; i < k; ++i) {
        const auto& clique = clique_of[i];
        std::vector<Vertex> others;
        for (Vertex j : clique)
            if (j != i) others.push_back(j);
        for (Vertex x : out.buffers[i]) {
            auto ball = closed_second_neighborhood(h, x);
            Partition local = equitable_coloring(h.induced(ball), static_cast<int>(clique.size()));
            const auto x_local = static_cast<Vertex>(std::lower_bound(ball.begin(), ball.end(), x) - ball.begin());
            std::size_t other_idx = 0;
            for (const auto& cls : local) {
                bool has_x = std::find(cls.begin(), cls.end(), x_local) != cls.end();
                int node = has_x ? i : others[other_idx++];
                for (Vertex v : cls) {
                    Vertex orig = ball[v];
                    if (target[orig] != -1) throw InvariantViolation("partition pattern: buffer balls overlap");
                    target[orig] = node;
                    ++load[node];
                }
            }
        }
    }
    for (int i = 0; i < k; ++i)
        if (load[i] > host.clusters[i].size())
            throw PartitionFailed("partition pattern: cluster " + std::to_string(i) + " overfilled in step II");

    // Step III: extend into the blow-up.
    std::vector<std::pair<Vertex, Vertex>> fixed;
    std::vector<std::size_t> used(k, 0);
    for (Vertex v = 0; v < n; ++v)
        if (target[v] >= 0) fixed.emplace_back(v, host.clusters[target[v]][used[target[v]]++]);
    Graph rstar = reduced_blow_up(host);
    PartialEmbedding phi_s(h, rstar, fixed);
    SwitchResult sw;
    for (int attempt = 0; attempt <= opts.switching_restarts; ++attempt) {
        sw = switching_embed(rstar, h, phi_s, seed.stream(static_cast<std::uint64_t>(attempt)));
        if (sw.ok()) break;
    }
    if (!sw.ok()) {
        throw PartitionFailed("partition pattern: switching step stuck with " +
                              std::to_string(mapped_edge_count(rstar, h, sw.phi)) + " of " +
                              std::to_string(h.size()) + " edges mapped after " +
                              std::to_string(opts.switching_restarts + 1) + " attempts");
    }

    out.parts.resize(k);
    out.part_of.resize(n);
    out.restrictions.assign(n, {});
    for (Vertex x = 0; x < n; ++x) {
        out.part_of[x] = host.cluster_of[sw.phi[x]];
        out.parts[out.part_of[x]].push_back(x);
    }
    auto check = check_partitioned_pattern(out, host, xstar);
    if (!check.ok()) throw InvariantViolation("partition pattern: result fails validation: " + check.detail);
    return out;
}

PatternCheck check_partitioned_pattern(const PartitionedPattern& p, const PartitionedHost& host,
                                       const std::vector<std::vector<Vertex>>& xstar) {
    PatternCheck c;
    const int k = static_cast<int>(host.clusters.size());
    auto fail = [&](bool& flag, const std::string& why) {
        if (flag) c.detail += (c.detail.empty() ? "" : "; ") + why;
        flag = false;
    };
    if (static_cast<int>(p.parts.size()) != k || static_cast<int>(p.part_of.size()) != p.h.order()) {
        fail(c.size_compatible, "part count or part map has the wrong length");
        return c;
    }
    for (int i = 0; i < k; ++i) {
        if (p.parts[i].size() != host.clusters[i].size()) fail(c.size_compatible, "part " + std::to_string(i) + " has the wrong size");
        for (Vertex x : p.parts[i])
            if (p.part_of[x] != i) fail(c.size_compatible, "part map disagrees with the parts");
    }
    for (auto [x, y] : p.h.edges()) {
        int a = p.part_of[x], b = p.part_of[y];
        if (a == b || !host.r.adjacent(a, b))
            fail(c.r_partition, "edge " + edge_str({x, y}) + " is not along R");
    }
    for (int i = 0; i < static_cast<int>(p.buffers.size()); ++i)
        for (Vertex x : p.buffers[i]) {
            if (p.part_of[x] != i) fail(c.buffer_condition, "buffer vertex outside its part");
            for (Vertex y : p.h.neighbors(x)) {
                if (!host.rprime.adjacent(i, p.part_of[y]))
                    fail(c.buffer_condition, "buffer edge " + edge_str({x, y}) + " is not along R'");
                for (Vertex z : p.h.neighbors(y))
                    if (!host.rprime.adjacent(p.part_of[y], p.part_of[z]))
                        fail(c.buffer_condition, "edge " + edge_str({y, z}) + " near a buffer is not along R'");
            }
        }
    std::vector<char> is_buffer(p.h.order(), 0);
    for (const auto& b : p.buffers)
        for (Vertex x : b) is_buffer[x] = 1;
    for (int i = 0; i < static_cast<int>(xstar.size()); ++i)
        for (Vertex v : xstar[i]) {
            if (p.part_of[v] != i) fail(c.prescribed, "X* vertex " + std::to_string(v) + " left its part");
            if (is_buffer[v]) fail(c.prescribed, "X* vertex " + std::to_string(v) + " is a buffer vertex");
        }
    return c;
}

}  // namespace robemb
