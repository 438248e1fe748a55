#include "robemb/host.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "robemb/error.hpp"
#include "robemb/regularity.hpp"

namespace robemb {

PartitionedHost generate_regular_host(const Graph& r, const Graph& rprime, int m, double d, Seed seed,
                                      int max_attempts) {
    if (m < 20) throw std::invalid_argument("regular host: clusters need at least 20 vertices");
    if (!(d > 0.0 && d <= 0.5)) throw std::invalid_argument("regular host: d must lie in (0, 1/2]");
    if (rprime.order() != r.order()) throw std::invalid_argument("regular host: R and R' differ in order");
    for (auto [i, j] : rprime.edges())
        if (!r.adjacent(i, j)) throw std::invalid_argument("regular host: R' is not a subgraph of R");
    if (max_attempts < 1) throw std::invalid_argument("regular host: need at least one attempt");

    const int k = r.order();
    const double eps = std::min(1.0, 4.0 / std::sqrt(static_cast<double>(m)));
    PartitionedHost host;
    host.r = r;
    host.rprime = rprime;
    host.params = HostParams{eps, d, 1.0, k};
    host.clusters.resize(k);
    host.cluster_of.resize(static_cast<std::size_t>(k) * m);
    for (int i = 0; i < k; ++i)
        for (int t = 0; t < m; ++t) {
            host.clusters[i].push_back(i * m + t);
            host.cluster_of[i * m + t] = i;
        }

    std::string last_failure;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(seed.stream(static_cast<std::uint64_t>(attempt)));
        GraphBuilder b(k * m);
        for (auto [i, j] : r.edges()) {
            const double p = rprime.adjacent(i, j) ? 2.0 * d : d;
            for (Vertex u : host.clusters[i])
                for (Vertex v : host.clusters[j])
                    if (rng.bernoulli(p)) b.add_edge(u, v);
        }
        Graph g = b.build();
        bool ok = true;
        const RegPairParams params{eps, d};
        for (auto [i, j] : r.edges()) {
            Seed check_seed = seed.stream(1000003ULL * (attempt + 1) + static_cast<std::uint64_t>(i * k + j));
            auto verdict = rprime.adjacent(i, j)
                               ? check_super_regular_pair(g, host.clusters[i], host.clusters[j], params,
                                                          RegularityMode::refute, 200, check_seed)
                               : check_regular_pair(g, host.clusters[i], host.clusters[j], params,
                                                    RegularityMode::refute, 200, check_seed);
            if (verdict.refuted()) {
                ok = false;
                last_failure = "pair " + std::to_string(i) + "-" + std::to_string(j) + ": " + verdict.reason;
                break;
            }
        }
        if (ok) {
            host.g = std::move(g);
            return host;
        }
    }
    throw GenerationFailed("regular host: every attempt was refuted (last: " + last_failure + ")");
}

Graph reduced_blow_up(const PartitionedHost& host) {
    GraphBuilder b(host.g.order());
    for (auto [i, j] : host.r.edges())
        for (Vertex u : host.clusters[i])
            for (Vertex v : host.clusters[j]) b.add_edge(u, v);
    return b.build();
}

}  // namespace robemb
