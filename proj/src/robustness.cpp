#include "robemb/robustness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "robemb/density.hpp"
#include "robemb/error.hpp"
#include "robemb/switching.hpp"

namespace robemb {

std::vector<double> edge_uniforms(const Graph& g, Seed seed) {
    Rng rng(seed);
    std::vector<double> u(g.size());
    for (auto& x : u) x = rng.uniform();
    return u;
}

Graph threshold_subgraph(const Graph& g, const std::vector<double>& uniforms, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    if (uniforms.size() != g.size()) throw std::invalid_argument("one uniform per edge required");
    const auto edges = g.edges();
    std::vector<Edge> kept;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (uniforms[i] < p) kept.push_back(edges[i]);
    return Graph(g.order(), kept);
}

Graph sample_gp(const Graph& g, double p, Seed seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    return threshold_subgraph(g, edge_uniforms(g, seed), p);
}

CliqueSplit split_cliques(const Graph& h, int delta) {
    if (delta < 0 || h.max_degree() > delta)
        throw std::invalid_argument("split_cliques: maximum degree exceeds delta");
    CliqueSplit out;
    for (const auto& comp : h.components()) {
        bool clique = static_cast<int>(comp.size()) == delta + 1 &&
                      std::all_of(comp.begin(), comp.end(), [&](Vertex v) { return h.degree(v) == delta; });
        auto& dst = clique ? out.v1 : out.v2;
        dst.insert(dst.end(), comp.begin(), comp.end());
    }
    out.h1 = h.induced(out.v1);
    out.h2 = h.induced(out.v2);
    return out;
}

Graph unbalanced_complete_multipartite(int n, int parts, int shift) {
    if (n < 1 || parts < 2 || parts > n) throw std::invalid_argument("multipartite host: need 2 <= parts <= n");
    std::vector<int> size(parts, n / parts);
    for (int i = 0; i < n % parts; ++i) ++size[i];
    if (shift < 0 || shift >= size[parts - 1]) throw std::invalid_argument("multipartite host: shift out of range");
    size[0] += shift;
    size[parts - 1] -= shift;
    std::vector<int> part(n);
    for (int i = 0, v = 0; i < parts; ++i)
        for (int j = 0; j < size[i]; ++j) part[v++] = i;
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (part[u] != part[v]) edges.emplace_back(u, v);
    return Graph(n, edges);
}

Graph clique_overlap_dirac_host(int n) {
    if (n < 2) throw std::invalid_argument("Dirac host: n must be at least 2");
    const int a = std::min(n, (n + 1) / 2 + 1);
    GraphBuilder b(n);
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = u + 1; v < a; ++v) b.add_edge(u, v);
    for (Vertex u = n - a; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
    return b.build();
}

Graph random_dense_host(int n, double fraction, Seed seed) {
    if (n < 1 || !(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("dense host: bad parameters");
    const int target = static_cast<int>(std::ceil(fraction * n - 1e-9));
    if (target > n - 1) throw InfeasibleParameters("dense host: degree target exceeds n - 1");
    Graph k = complete_graph(n);
    auto edges = k.edges();
    Rng rng(seed);
    rng.shuffle(edges);
    std::vector<int> deg(n, n - 1);
    std::vector<Edge> kept;
    for (auto [u, v] : edges) {
        if (deg[u] > target && deg[v] > target && rng.bernoulli(0.5)) {
            --deg[u];
            --deg[v];
        } else {
            kept.push_back({u, v});
        }
    }
    return Graph(n, kept);
}

bool ScanResult::timeout_dominated() const {
    return std::any_of(rows.begin(), rows.end(), [](const ScanRow& r) { return r.unreliable; });
}

ScanResult threshold_scan(const ThresholdScan& scan) {
    if (scan.grid.empty()) throw std::invalid_argument("scan: empty p-grid");
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
        if (!(scan.grid[i] > 0.0 && scan.grid[i] <= 1.0)) throw std::invalid_argument("scan: p must lie in (0, 1]");
        if (i > 0 && !(scan.grid[i] > scan.grid[i - 1])) throw std::invalid_argument("scan: grid must increase strictly");
    }
    if (scan.trials < 1) throw std::invalid_argument("scan: trials must be positive");
    if (scan.workers < 1) throw std::invalid_argument("scan: workers must be positive");
    if (scan.host.order() != scan.pattern.order()) throw std::invalid_argument("scan: host and pattern orders differ");

    const int delta = scan.pattern.max_degree();
    const bool switching = delta >= 1 && switching_hypothesis_holds(scan.host, delta, scan.gamma, 0);
    const std::size_t m = scan.grid.size();
    std::vector<std::vector<Containment>> outcome(scan.trials, std::vector<Containment>(m));

    auto run_trial = [&](int t) {
        const Seed ts = scan.seed.child(static_cast<std::uint64_t>(t));
        const auto u = edge_uniforms(scan.host, ts);
        for (std::size_t i = 0; i < m; ++i) {
            const double p = scan.grid[i];
            if (p == 1.0 && switching) {
                auto res = switching_embed(scan.host, scan.pattern, PartialEmbedding(), ts.stream(7));
                if (res.ok() && is_embedding(scan.host, scan.pattern, res.phi)) {
                    outcome[t][i] = Containment::yes;
                    continue;
                }
            }
            outcome[t][i] = contains_spanning(threshold_subgraph(scan.host, u, p), scan.pattern, scan.budget).status;
        }
    };
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int t; (t = next.fetch_add(1)) < scan.trials;) run_trial(t);
    };
    if (scan.workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < scan.workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ScanResult result;
    for (std::size_t i = 0; i < m; ++i) {
        ScanRow row;
        row.p = scan.grid[i];
        row.trials = scan.trials;
        row.method = scan.grid[i] == 1.0 && switching ? "switching" : "search";
        for (int t = 0; t < scan.trials; ++t) {
            if (outcome[t][i] == Containment::yes) ++row.successes;
            if (outcome[t][i] == Containment::timeout) ++row.timeouts;
        }
        row.fraction = static_cast<double>(row.successes) / row.trials;
        row.ci = wilson(row.successes, row.trials);
        row.unreliable = row.timeouts > 0.2 * row.trials;
        result.rows.push_back(row);
    }
    for (int t = 0; t < scan.trials; ++t)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                if (outcome[t][i] == Containment::timeout || outcome[t][j] == Containment::timeout) continue;
                ++result.coupled_pairs;
                if (outcome[t][i] == Containment::yes && outcome[t][j] == Containment::no)
                    ++result.monotonicity_violations;
            }
    return result;
}

void write_scan_csv(std::ostream& out, const ScanResult& result) {
    out << "p,trials,successes,fraction,wilson_lo,wilson_hi,timeouts,unreliable,method\n";
    for (const auto& r : result.rows)
        out << r.p << "," << r.trials << "," << r.successes << "," << r.fraction << "," << r.ci.lo << ","
            << r.ci.hi << "," << r.timeouts << "," << (r.unreliable ? 1 : 0) << "," << r.method << "\n";
}

BadVertexReport bad_vertex_check(const Graph& g, int delta, double gamma, int k, int samples, Seed seed) {
    const int n = g.order();
    if (k < 1 || k > n) throw std::invalid_argument("bad-vertex check: k must lie in [1, n]");
    if (samples < 1) throw std::invalid_argument("bad-vertex check: samples must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("bad-vertex check: gamma must lie in (0, 1)");
    const double de = delta_e_upper_bound(delta).to_double();
    BadVertexReport rep;
    rep.k = k;
    rep.threshold = (de + gamma / 2.0) * k;
    rep.hypothesis = g.min_degree() >= (de + gamma) * n - 1e-9;
    Rng rng(seed);
    Bitset in_u(n);
    for (int s = 0; s < samples; ++s) {
        auto u = rng.sample(n, k);
        in_u.clear();
        for (int v : u) in_u.set(v);
        for (int v : u) {
            ++rep.checked;
            if (g.row(v).count_and(in_u) < rep.threshold) ++rep.bad;
        }
    }
    rep.frequency = static_cast<double>(rep.bad) / rep.checked;
    rep.bound = hypergeo_chernoff_bound(gamma / 2.0, gamma * k / 2.0);
    const double b = std::min(1.0, rep.bound);
    rep.sigma = std::sqrt(b * (1.0 - b) / rep.checked);
    return rep;
}

TailReport hypergeometric_tail(int population, int marked, int draws, double eps, double t, std::int64_t trials,
                               Seed seed) {
    if (population < 1 || marked < 0 || marked > population || draws < 0 || draws > population)
        throw std::invalid_argument("hypergeometric: bad parameters");
    if (trials < 1) throw std::invalid_argument("hypergeometric: trials must be positive");
    TailReport rep;
    rep.population = population;
    rep.marked = marked;
    rep.draws = draws;
    rep.eps = eps;
    rep.t = t;
    rep.mean = static_cast<double>(draws) * marked / population;
    rep.trials = trials;
    Rng rng(seed);
    for (std::int64_t i = 0; i < trials; ++i) {
        auto s = rng.sample(population, draws);
        auto x = std::count_if(s.begin(), s.end(), [&](int v) { return v < marked; });
        if (std::abs(static_cast<double>(x) - rep.mean) >= t - 1e-9) ++rep.hits;
    }
    rep.frequency = static_cast<double>(rep.hits) / trials;
    rep.bound = hypergeo_chernoff_bound(eps, t);
    const double b = std::min(1.0, rep.bound);
    rep.sigma = std::sqrt(b * (1.0 - b) / trials);
    return rep;
}

Graph thm91_pattern(int n, int delta, int cliques) {
    if (delta < 2 || cliques < 0) throw std::invalid_argument("thm91 pattern: need delta >= 2");
    const int used = 5 + cliques * (delta + 1);
    if (used > n) throw std::invalid_argument("thm91 pattern: n too small");
    Graph g = cycle_graph(5);
    for (int i = 0; i < cliques; ++i) g = disjoint_union(g, complete_graph(delta + 1));
    return disjoint_union(g, Graph(n - used));
}

namespace {

void build_grid(const std::vector<double>& constants, double base, std::vector<double>& cs, std::vector<double>& ps) {
    std::vector<std::pair<double, double>> v;
    for (double c : constants) v.emplace_back(std::min(1.0, c * base), c);
    std::sort(v.begin(), v.end());
    for (auto [p, c] : v)
        if (ps.empty() || p > ps.back()) {
            ps.push_back(p);
            cs.push_back(c);
        }
}

}  // namespace

Thm91Result scan_thm91_grid(const Thm91Options& opts) {
    if (opts.n > 16) throw UnsupportedSize("scan-thm91: exact factor testing is limited to n <= 16");
    if (opts.n < 2 || opts.delta < 2) throw std::invalid_argument("scan-thm91: need n >= 2 and delta >= 2");
    for (double c : opts.constants)
        if (!(c > 0.0)) throw std::invalid_argument("scan-thm91: constants must be positive");
    const Graph host = opts.host.order() == 0 ? complete_graph(opts.n) : opts.host;
    const Graph pattern = opts.pattern.order() == 0 ? thm91_pattern(opts.n, opts.delta, 1) : opts.pattern;
    if (host.order() != opts.n || pattern.order() != opts.n) throw std::invalid_argument("scan-thm91: order mismatch");
    if (pattern.max_degree() > opts.delta) throw std::invalid_argument("scan-thm91: pattern exceeds delta");

    Thm91Result res;
    const double n = opts.n, ln = std::log(n);
    res.m1 = pattern.size() == 0 ? 0.0 : max_one_density(pattern).value.to_double();
    if (res.m1 <= 0.0) throw std::invalid_argument("scan-thm91: pattern has no edges");
    const int s = opts.delta + 1;
    build_grid(opts.constants, std::pow(n, -1.0 / res.m1) * ln, res.m1_c, res.m1_grid);
    build_grid(opts.constants, std::pow(n, -2.0 / s) * std::pow(ln, 1.0 / (s * (s - 1) / 2)), res.improved_c,
               res.improved_grid);

    ThresholdScan scan;
    scan.host = host;
    scan.pattern = pattern;
    scan.trials = opts.trials;
    scan.budget = opts.budget;
    scan.workers = opts.workers;
    scan.grid = res.m1_grid;
    scan.seed = opts.seed.stream(1);
    res.m1_scan = threshold_scan(scan);
    scan.grid = res.improved_grid;
    scan.seed = opts.seed.stream(2);
    res.improved_scan = threshold_scan(scan);

    const int k = std::max(1, static_cast<int>(split_cliques(pattern, opts.delta).v1.size()));
    res.bad = bad_vertex_check(host, opts.delta, opts.gamma, k, opts.bad_vertex_samples, opts.seed.stream(3));
    return res;
}

void write_thm91_csv(std::ostream& out, const Thm91Result& result) {
    out << "grid,c,p,trials,successes,fraction,wilson_lo,wilson_hi,timeouts,unreliable\n";
    auto emit = [&](const char* name, const std::vector<double>& cs, const ScanResult& r) {
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const auto& row = r.rows[i];
            out << name << "," << cs[i] << "," << row.p << "," << row.trials << "," << row.successes << ","
                << row.fraction << "," << row.ci.lo << "," << row.ci.hi << "," << row.timeouts << ","
                << (row.unreliable ? 1 : 0) << "\n";
        }
    };
    emit("m1", result.m1_c, result.m1_scan);
    emit("improved", result.improved_c, result.improved_scan);
}

void write_bad_vertex_csv(std::ostream& out, const BadVertexReport& r) {
    out << "k,threshold,checked,bad,frequency,bound,sigma,hypothesis\n";
    out << r.k << "," << r.threshold << "," << r.checked << "," << r.bad << "," << r.frequency << "," << r.bound
        << "," << r.sigma << "," << (r.hypothesis ? 1 : 0) << "\n";
}

}  // namespace robemb
