#include "robemb/rga.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "robemb/error.hpp"
#include "robemb/switching.hpp"

namespace robemb {

namespace {

const std::vector<Vertex>& allowed_images(const PartitionedHost& host, const PartitionedPattern& p, Vertex x) {
    if (!p.restrictions.empty() && !p.restrictions[x].empty()) return p.restrictions[x];
    return host.clusters[p.part_of[x]];
}

void check_compatible(const PartitionedHost& host, const PartitionedPattern& p) {
    if (p.h.order() != host.g.order() || p.parts.size() != host.clusters.size() ||
        static_cast<int>(p.part_of.size()) != p.h.order())
        throw std::invalid_argument("pipeline: pattern does not match host");
}

}  // namespace

std::vector<std::vector<Vertex>> select_buffers(const PartitionedPattern& p, double mu, Seed seed) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("select buffers: mu must lie in [0,1]");
    Rng rng(seed);
    std::vector<std::vector<Vertex>> out(p.parts.size());
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        const auto need = static_cast<int>(std::floor(mu * static_cast<double>(p.parts[i].size()) + 1e-9));
        const auto& pool = p.buffers[i];
        if (need > static_cast<int>(pool.size()))
            throw std::invalid_argument("select buffers: part " + std::to_string(i) + " has only " +
                                        std::to_string(pool.size()) + " potential buffer vertices, needs " +
                                        std::to_string(need));
        for (int idx : rng.sample(static_cast<int>(pool.size()), need)) out[i].push_back(pool[idx]);
        std::sort(out[i].begin(), out[i].end());
    }
    return out;
}

std::vector<Vertex> default_main_order(const PartitionedPattern& p, const std::vector<std::vector<Vertex>>& buffers) {
    std::vector<char> is_buffer(p.h.order(), 0);
    for (const auto& b : buffers)
        for (Vertex x : b) is_buffer[x] = 1;
    std::vector<std::vector<Vertex>> queues(p.parts.size());
    for (std::size_t i = 0; i < p.parts.size(); ++i)
        for (Vertex x : p.parts[i])
            if (!is_buffer[x]) queues[i].push_back(x);
    std::vector<Vertex> order;
    for (std::size_t round = 0;; ++round) {
        bool any = false;
        for (const auto& q : queues)
            if (round < q.size()) {
                order.push_back(q[round]);
                any = true;
            }
        if (!any) break;
    }
    return order;
}

RGAResult rga_embed(const PartitionedHost& host, const PartitionedPattern& p, const RGAConfig& cfg, Seed seed) {
    check_compatible(host, p);
    RGAResult res;
    res.buffers = select_buffers(p, cfg.mu, seed.stream(1));
    res.order = cfg.order.empty() ? default_main_order(p, res.buffers) : cfg.order;
    res.phi.assign(p.h.order(), -1);
    Rng rng(seed.stream(2));
    std::vector<char> used(host.g.order(), 0);
    const double theta = cfg.floor_fraction();
    std::vector<Vertex> cand;
    for (std::size_t t = 0; t < res.order.size(); ++t) {
        const Vertex x = res.order[t];
        if (res.phi[x] != -1) throw std::invalid_argument("rga: order repeats a vertex");
        cand.clear();
        for (Vertex v : allowed_images(host, p, x)) {
            if (used[v]) continue;
            bool ok = true;
            for (Vertex y : p.h.neighbors(x))
                if (res.phi[y] >= 0 && !host.g.adjacent(v, res.phi[y])) {
                    ok = false;
                    break;
                }
            if (ok) cand.push_back(v);
        }
        res.candidate_sizes.push_back(static_cast<int>(cand.size()));
        const auto cluster_size = static_cast<double>(host.clusters[p.part_of[x]].size());
        const int floor_size = std::max(1, static_cast<int>(std::floor(theta * cluster_size + 1e-9)));
        if (static_cast<int>(cand.size()) < floor_size) {
            res.failed_step = static_cast<int>(t);
            return res;
        }
        Vertex v = cand[rng.index(cand.size())];
        res.phi[x] = v;
        used[v] = 1;
    }
    res.success = true;
    return res;
}

BipartiteGraph buffer_graph(const PartitionedHost& host, const PartitionedPattern& p, const RGAResult& main, int part,
                            std::vector<Vertex>* side_a, std::vector<Vertex>* side_b) {
    const auto& a = main.buffers[part];
    std::vector<char> used(host.g.order(), 0);
    for (Vertex v : main.phi)
        if (v >= 0) used[v] = 1;
    std::vector<Vertex> b;
    for (Vertex v : host.clusters[part])
        if (!used[v]) b.push_back(v);
    if (a.size() != b.size())
        throw InvariantViolation("buffer completion: part " + std::to_string(part) + " has " +
                                 std::to_string(a.size()) + " buffer vertices but " + std::to_string(b.size()) +
                                 " free cluster vertices");
    std::vector<int> pos(host.g.order(), -1);
    for (std::size_t j = 0; j < b.size(); ++j) pos[b[j]] = static_cast<int>(j);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vertex x = a[i];
        for (Vertex v : allowed_images(host, p, x)) {
            if (pos[v] < 0) continue;
            bool ok = true;
            for (Vertex y : p.h.neighbors(x))
                if (main.phi[y] >= 0 && !host.g.adjacent(v, main.phi[y])) {
                    ok = false;
                    break;
                }
            if (ok) edges.emplace_back(static_cast<int>(i), pos[v]);
        }
    }
    if (side_a) *side_a = a;
    if (side_b) *side_b = b;
    return BipartiteGraph(static_cast<int>(a.size()), std::move(edges));
}

BufferCompletion complete_with_buffers(const PartitionedHost& host, const PartitionedPattern& p,
                                       const RGAResult& main, int c, Seed seed, int max_resamples) {
    check_compatible(host, p);
    if (!main.success) throw std::invalid_argument("buffer completion: main embedding did not succeed");
    if (c < 1) throw std::invalid_argument("buffer completion: C must be positive");
    BufferCompletion out;
    out.phi = main.phi;
    for (int part = 0; part < static_cast<int>(p.parts.size()); ++part) {
        std::vector<Vertex> side_a, side_b;
        BipartiteGraph f = buffer_graph(host, p, main, part, &side_a, &side_b);
        if (f.lambda() == 0) continue;
        auto r = sample_spread_matching(f, std::min(c, f.lambda()), max_resamples,
                                        seed.stream(static_cast<std::uint64_t>(part)));
        if (!r.success) {
            out.failed_part = part;
            out.hall = r.last;
            return out;
        }
        for (int i = 0; i < f.lambda(); ++i) out.phi[side_a[i]] = side_b[r.matching.mate_a[i]];
    }
    if (!is_embedding(host.g, p.h, out.phi)) throw InvariantViolation("buffer completion: result is not an embedding");
    out.success = true;
    return out;
}

PipelineTrial run_pipeline_trial(const PartitionedHost& host, const PartitionedPattern& p, const RGAConfig& cfg,
                                 int c, Seed seed, int max_resamples) {
    PipelineTrial t;
    RGAResult main = rga_embed(host, p, cfg, seed.stream(10));
    if (!main.success) {
        t.failed_stage = "rga";
        t.failed_step = main.failed_step;
        return t;
    }
    BufferCompletion done = complete_with_buffers(host, p, main, c, seed.stream(11), max_resamples);
    if (!done.success) {
        t.failed_stage = "buffer";
        t.failed_part = done.failed_part;
        return t;
    }
    t.success = true;
    t.phi = std::move(done.phi);
    return t;
}

PipelineStats sample_pipeline(const PartitionedHost& host, const PartitionedPattern& p, const RGAConfig& cfg, int c,
                              const std::vector<std::pair<Vertex, Vertex>>& probes,
                              const std::vector<std::vector<Edge>>& edge_sets, std::int64_t successes, Seed seed,
                              int max_resamples) {
    check_compatible(host, p);
    if (successes < 1000) throw std::invalid_argument("pipeline estimate: needs at least 1000 successful trials");
    for (auto [x, v] : probes)
        if (x < 0 || x >= p.h.order() || v < 0 || v >= host.g.order())
            throw std::invalid_argument("pipeline estimate: probe out of range");
    for (const auto& s : edge_sets)
        for (auto [u, v] : s)
            if (u < 0 || v < 0 || u >= host.g.order() || v >= host.g.order() || u == v)
                throw std::invalid_argument("pipeline estimate: edge event out of range");

    std::vector<std::int64_t> probe_hits(probes.size(), 0), edge_hits(edge_sets.size(), 0);
    std::vector<Vertex> inverse(host.g.order());
    PipelineStats st;
    const std::int64_t max_attempts = 10 * successes;
    while (st.successes < successes) {
        if (st.attempts >= max_attempts)
            throw EstimateUnreliable("pipeline estimate: success rate below 10% (" + std::to_string(st.successes) +
                                     " of " + std::to_string(st.attempts) + ")");
        PipelineTrial t = run_pipeline_trial(host, p, cfg, c, seed.child(static_cast<std::uint64_t>(st.attempts)),
                                             max_resamples);
        st.outcomes.push_back({st.attempts, t.success, t.failed_stage, t.failed_step, t.failed_part});
        ++st.attempts;
        if (!t.success) continue;
        ++st.successes;
        for (std::size_t i = 0; i < probes.size(); ++i)
            if (t.phi[probes[i].first] == probes[i].second) ++probe_hits[i];
        for (Vertex x = 0; x < p.h.order(); ++x) inverse[t.phi[x]] = x;
        for (std::size_t i = 0; i < edge_sets.size(); ++i) {
            bool all = std::all_of(edge_sets[i].begin(), edge_sets[i].end(),
                                   [&](const Edge& e) { return p.h.adjacent(inverse[e.first], inverse[e.second]); });
            if (all) ++edge_hits[i];
        }
    }
    double best = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        st.vertex_probes.push_back(SpreadEstimate::from_counts(
            "vertex:" + std::to_string(probes[i].first) + "->" + std::to_string(probes[i].second), probe_hits[i],
            st.successes));
        best = std::max(best, st.vertex_probes.back().estimate);
    }
    st.n_times_max_probe = best * p.h.order();
    for (std::size_t i = 0; i < edge_sets.size(); ++i) {
        std::string name = "edges:";
        for (std::size_t j = 0; j < edge_sets[i].size(); ++j) name += (j ? ";" : "") + edge_str(edge_sets[i][j]);
        st.edge_events.push_back(SpreadEstimate::from_counts(name, edge_hits[i], st.successes));
    }
    return st;
}

void write_trial_outcomes_csv(std::ostream& out, const std::vector<TrialOutcome>& rows) {
    out << "trial,success,failed_stage,failed_step,failed_part\n";
    for (const auto& r : rows)
        out << r.trial << "," << (r.success ? 1 : 0) << "," << r.failed_stage << "," << r.failed_step << ","
            << r.failed_part << "\n";
}

PipelineStats estimate_vertex_spread(const PartitionedHost& host, const PartitionedPattern& p, const RGAConfig& cfg,
                                     int c, const std::vector<std::pair<Vertex, Vertex>>& probes,
                                     std::int64_t successes, Seed seed) {
    return sample_pipeline(host, p, cfg, c, probes, {}, successes, seed);
}

std::vector<SpreadEstimate> pushforward_edge_spread(const PartitionedHost& host, const PartitionedPattern& p,
                                                    const RGAConfig& cfg, int c,
                                                    const std::vector<std::vector<Edge>>& edge_sets,
                                                    std::int64_t successes, Seed seed) {
    return sample_pipeline(host, p, cfg, c, {}, edge_sets, successes, seed).edge_events;
}

}  // namespace robemb
