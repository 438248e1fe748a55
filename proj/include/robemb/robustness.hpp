#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "robemb/containment.hpp"
#include "robemb/graph.hpp"
#include "robemb/rng.hpp"
#include "robemb/stats.hpp"

namespace robemb {

// One uniform in [0,1) per edge of G, in G.edges() order. G(p) keeps the
// edges whose uniform is below p, so a shared vector couples all p at once.
std::vector<double> edge_uniforms(const Graph& g, Seed seed);
Graph threshold_subgraph(const Graph& g, const std::vector<double>& uniforms, double p);
Graph sample_gp(const Graph& g, double p, Seed seed);

// H1: the components of H that are copies of K_{delta+1}; H2: the rest.
// v1[i] is the vertex of H that became vertex i of h1, likewise v2.
struct CliqueSplit {
    Graph h1, h2;
    std::vector<Vertex> v1, v2;
};

CliqueSplit split_cliques(const Graph& h, int delta);

// Host constructions for scans.
// Complete (delta+1)-partite graph on n vertices with near-equal parts, then
// `shift` vertices moved from the last part to the first.
Graph unbalanced_complete_multipartite(int n, int parts, int shift);
// Two cliques of size ceil(n/2)+1 on [0, a) and [n-a, n); minimum degree n/2
// for even n.
Graph clique_overlap_dirac_host(int n);
// Random edges removed from K_n while every degree stays at least
// ceil(fraction * n).
Graph random_dense_host(int n, double fraction, Seed seed);

struct ThresholdScan {
    std::string host_name = "host";
    std::string pattern_name = "pattern";
    Graph host, pattern;
    std::vector<double> grid;  // strictly increasing, within (0, 1]
    int trials = 1000;
    Seed seed{1};
    std::int64_t budget = kDefaultSearchBudget;
    double gamma = 0.05;  // slack for the p = 1 degree condition
    int workers = 1;
};

struct ScanRow {
    double p = 0.0;
    int trials = 0;
    int successes = 0;
    int timeouts = 0;
    double fraction = 0.0;
    Interval ci;            // Wilson, 95%
    bool unreliable = false;  // timeouts above 20% of trials
    std::string method;     // "search", or "switching" at p = 1 under the degree condition
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::int64_t coupled_pairs = 0;  // (trial, p < p') pairs with both outcomes decided
    std::int64_t monotonicity_violations = 0;
    bool timeout_dominated() const;
};

// Trial t draws edge uniforms from seed.child(t) and reuses them at every p,
// so the trials form coupled chains G(p_1) within G(p_2) within ... within G.
// Trials are spread over `workers` threads; results do not depend on the
// worker count.
ScanResult threshold_scan(const ThresholdScan& scan);

// Columns: p,trials,successes,fraction,wilson_lo,wilson_hi,timeouts,unreliable,method
void write_scan_csv(std::ostream& out, const ScanResult& result);

// Vertices sampled uniformly without replacement into a k-set U; v in U is
// bad when it has fewer than (delta_e + gamma/2) k neighbours in U. The
// frequency is over all (sample, vertex) pairs, compared with the two-sided
// tail bound at t = gamma k / 2, eps = gamma / 2.
struct BadVertexReport {
    int k = 0;
    double threshold = 0.0;
    std::int64_t checked = 0;
    std::int64_t bad = 0;
    double frequency = 0.0;
    double bound = 0.0;
    double sigma = 0.0;  // binomial standard deviation at the bound
    bool hypothesis = false;  // d(v) >= (delta_e + gamma) n for every v
};

BadVertexReport bad_vertex_check(const Graph& g, int delta, double gamma, int k, int samples, Seed seed);

// Empirical P(|X - EX| >= t) for X hypergeometric: draws of size `draws` from
// a population of `population` with `marked` marked elements.
struct TailReport {
    int population = 0, marked = 0, draws = 0;
    double eps = 0.0, t = 0.0, mean = 0.0;
    std::int64_t trials = 0, hits = 0;
    double frequency = 0.0;
    double bound = 0.0;
    double sigma = 0.0;
};

TailReport hypergeometric_tail(int population, int marked, int draws, double eps, double t,
                               std::int64_t trials, Seed seed);

// C_5, then `cliques` copies of K_{delta+1}, padded with isolated vertices to n.
Graph thm91_pattern(int n, int delta, int cliques);

struct Thm91Options {
    int delta = 2;
    int n = 12;
    double gamma = 0.2;
    int trials = 200;
    Seed seed{1};
    std::vector<double> constants{0.25, 0.5, 1.0, 2.0};
    Graph host;     // K_n when empty
    Graph pattern;  // thm91_pattern(n, delta, 1) when empty
    int bad_vertex_samples = 1000;
    std::int64_t budget = kDefaultSearchBudget;
    int workers = 1;
};

struct Thm91Result {
    double m1 = 0.0;
    // Parallel lists: constant c and the resulting p, duplicates after capping dropped.
    std::vector<double> m1_c, m1_grid, improved_c, improved_grid;
    ScanResult m1_scan, improved_scan;
    BadVertexReport bad;
    bool timeout_dominated() const { return m1_scan.timeout_dominated() || improved_scan.timeout_dominated(); }
};

// m1 grid: c n^{-1/m1(H)} ln n. Improved grid: c n^{-2/(delta+1)} (ln n)^{1/binom(delta+1, 2)}.
// Both capped at 1. Requires n <= 16.
Thm91Result scan_thm91_grid(const Thm91Options& opts);

// Columns: grid,c,p,trials,successes,fraction,wilson_lo,wilson_hi,timeouts,unreliable
void write_thm91_csv(std::ostream& out, const Thm91Result& result);
// Columns: k,threshold,checked,bad,frequency,bound,sigma,hypothesis
void write_bad_vertex_csv(std::ostream& out, const BadVertexReport& report);

}  // namespace robemb
