#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "helpers.hpp"
#include "oracles.hpp"
#include "robemb/containment.hpp"
#include "robemb/density.hpp"
#include "robemb/error.hpp"
#include "robemb/robustness.hpp"

using namespace robemb;

namespace {

// Does G hold a 5-cycle and a triangle on disjoint vertex sets?
bool has_c5_and_triangle(const Graph& g) {
    const int n = g.order();
    std::vector<char> used(n, 0);
    auto has_c5 = [&]() {
        std::vector<Vertex> free;
        for (Vertex v = 0; v < n; ++v)
            if (!used[v]) free.push_back(v);
        const int f = static_cast<int>(free.size());
        // Anchor the cycle at its smallest vertex a, then order the other four.
        for (int i = 0; i < f; ++i) {
            std::vector<Vertex> rest;
            for (int j = i + 1; j < f; ++j) rest.push_back(free[j]);
            const int r = static_cast<int>(rest.size());
            for (int b = 0; b < r; ++b)
                for (int c = 0; c < r; ++c)
                    for (int d = 0; d < r; ++d)
                        for (int e = 0; e < r; ++e) {
                            if (b == c || b == d || b == e || c == d || c == e || d == e) continue;
                            const Vertex cyc[5] = {free[i], rest[b], rest[c], rest[d], rest[e]};
                            bool ok = true;
                            for (int s = 0; s < 5 && ok; ++s) ok = g.adjacent(cyc[s], cyc[(s + 1) % 5]);
                            if (ok) return true;
                        }
        }
        return false;
    };
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c) {
                if (!g.adjacent(a, b) || !g.adjacent(a, c) || !g.adjacent(b, c)) continue;
                used[a] = used[b] = used[c] = 1;
                const bool found = has_c5();
                used[a] = used[b] = used[c] = 0;
                if (found) return true;
            }
    return false;
}

// Outcome counts per grid point, recomputed from the shared per-trial uniforms.
std::vector<int> recount(const Graph& host, const std::vector<double>& grid, int trials, Seed seed,
                         const std::function<bool(const Graph&)>& contains) {
    std::vector<int> hits(grid.size(), 0);
    for (int t = 0; t < trials; ++t) {
        const auto u = edge_uniforms(host, seed.child(static_cast<std::uint64_t>(t)));
        for (std::size_t i = 0; i < grid.size(); ++i) hits[i] += contains(threshold_subgraph(host, u, grid[i]));
    }
    return hits;
}

}  // namespace

TEST_CASE("G(p) sampling") {
    Graph k = complete_graph(20);
    CHECK(sample_gp(k, 0.0, Seed{1}).size() == 0u);
    CHECK(sample_gp(k, 1.0, Seed{1}) == k);
    CHECK(sample_gp(k, 0.5, Seed{4}) == sample_gp(k, 0.5, Seed{4}));
    CHECK_THROWS_AS(sample_gp(k, 1.5, Seed{}), std::invalid_argument);
    CHECK_THROWS_AS(threshold_subgraph(k, {0.1}, 0.5), std::invalid_argument);

    const int trials = 10000;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t)
        sum += static_cast<double>(sample_gp(k, 0.5, Seed{77}.child(static_cast<std::uint64_t>(t))).size());
    // e(G(p)) ~ Bin(190, 1/2): mean 95, variance 47.5.
    const double sigma = std::sqrt(47.5 / trials);
    CHECK(std::abs(sum / trials - 95.0) <= 3 * sigma);

    const auto u = edge_uniforms(k, Seed{2});
    Graph lo = threshold_subgraph(k, u, 0.3), hi = threshold_subgraph(k, u, 0.6);
    for (auto e : lo.edges()) CHECK(hi.adjacent(e.first, e.second));
}

TEST_CASE("spanning containment: small cases and fast refutations") {
    Graph two = disjoint_union(complete_graph(2), complete_graph(2));
    auto r = contains_spanning(cycle_graph(4), two);
    REQUIRE(r.status == Containment::yes);
    for (auto [x, y] : two.edges()) CHECK(cycle_graph(4).adjacent(r.embedding[x], r.embedding[y]));

    auto deg = contains_spanning(cycle_graph(6), complete_graph(6));
    CHECK(deg.status == Containment::no);
    CHECK(deg.method == "degree-count");
    CHECK_THROWS_AS(contains_spanning(cycle_graph(5), cycle_graph(4)), std::invalid_argument);
    CHECK_THROWS_AS(contains_spanning(cycle_graph(4), cycle_graph(4), 0), std::invalid_argument);
    CHECK(to_string(Containment::timeout) == "timeout");
}

TEST_CASE("spanning containment agrees with permutation search on small graphs") {
    for (int t = 0; t < 120; ++t) {
        const int n = 4 + t % 5;
        Graph g = testutil::random_graph(n, 0.6, Seed{900u + t});
        Graph h = testutil::random_graph(n, 0.3, Seed{1900u + t});
        auto res = contains_spanning(g, h);
        REQUIRE(res.status != Containment::timeout);
        CHECK((res.status == Containment::yes) == oracle::contains_spanning(g, h));
        if (res.status == Containment::yes) {
            std::vector<Vertex> img = res.embedding;
            std::sort(img.begin(), img.end());
            CHECK(img == testutil::range(0, n));
            for (auto [x, y] : h.edges()) CHECK(g.adjacent(res.embedding[x], res.embedding[y]));
        }
    }
}

TEST_CASE("clique factors via exact cover agree with brute force") {
    for (int t = 0; t < 40; ++t) {
        const int r = 3 + t % 2, n = r * (2 + t % 2);
        Graph g = testutil::random_graph(n, 0.75, Seed{4000u + t});
        GraphBuilder hb(n);
        for (int b = 0; b < n; b += r)
            for (int i = b; i < b + r; ++i)
                for (int j = i + 1; j < b + r; ++j) hb.add_edge(i, j);
        auto res = contains_spanning(g, hb.build());
        REQUIRE(res.status != Containment::timeout);
        CHECK((res.status == Containment::yes) == oracle::has_clique_factor(g, r));
    }
}

TEST_CASE("a tiny budget is reported as a timeout") {
    Graph h = disjoint_union(cycle_graph(5), cycle_graph(5));
    Graph g = testutil::random_graph(10, 0.5, Seed{3});
    auto res = contains_spanning(g, h, 1);
    if (res.method != "degree-count") CHECK(res.status == Containment::timeout);
    auto full = contains_spanning(complete_graph(10), h, 1);
    CHECK(full.status == Containment::timeout);
    CHECK(full.nodes >= 1);
}

TEST_CASE("splitting off clique components") {
    Graph h = disjoint_union(disjoint_union(complete_graph(3), cycle_graph(5)), complete_graph(3));
    auto s = split_cliques(h, 2);
    CHECK(s.h1.order() == 6);
    CHECK(s.h1.size() == 6u);
    CHECK(s.h2.order() == 5);
    CHECK(s.h2 == cycle_graph(5));
    CHECK(s.v1 == std::vector<Vertex>{0, 1, 2, 8, 9, 10});
    CHECK(s.v2 == std::vector<Vertex>{3, 4, 5, 6, 7});
    CHECK(max_one_density(h).value == std::max(max_one_density(s.h1).value, max_one_density(s.h2).value));
    CHECK_THROWS_AS(split_cliques(complete_graph(4), 2), std::invalid_argument);

    for (int t = 0; t < 20; ++t) {
        Graph mix = disjoint_union(testutil::random_bounded_degree(9, 2, 0.7, Seed{50u + t}),
                                   disjoint_union(complete_graph(3), complete_graph(3)));
        auto sp = split_cliques(mix, 2);
        CHECK(sp.h1.order() + sp.h2.order() == mix.order());
        Rational best(0);
        if (sp.h1.order() >= 2) best = std::max(best, max_one_density(sp.h1).value);
        if (sp.h2.order() >= 2) best = std::max(best, max_one_density(sp.h2).value);
        CHECK(max_one_density(mix).value == best);
    }
}

TEST_CASE("scan hosts") {
    Graph dirac = clique_overlap_dirac_host(10);
    CHECK(dirac.min_degree() == 5);
    Graph mp = unbalanced_complete_multipartite(9, 3, 1);
    CHECK(mp.size() == 4u * 3u + 4u * 2u + 3u * 2u);
    Graph dense = random_dense_host(20, 0.8, Seed{1});
    CHECK(dense.min_degree() >= 16);
    CHECK(dense.size() < complete_graph(20).size());
}

TEST_CASE("threshold scan: triangle factor counts match brute force") {
    ThresholdScan scan;
    scan.host = complete_graph(12);
    GraphBuilder hb(12);
    for (int b = 0; b < 12; b += 3) {
        hb.add_edge(b, b + 1);
        hb.add_edge(b, b + 2);
        hb.add_edge(b + 1, b + 2);
    }
    scan.pattern = hb.build();
    scan.grid = {0.3, 0.5, 0.7, 0.9, 1.0};
    scan.trials = 60;
    scan.seed = Seed{21};
    scan.workers = 2;
    ScanResult res = threshold_scan(scan);
    auto hits = recount(scan.host, scan.grid, scan.trials, scan.seed,
                        [](const Graph& g) { return oracle::has_clique_factor(g, 3); });
    REQUIRE(res.rows.size() == scan.grid.size());
    for (std::size_t i = 0; i < hits.size(); ++i) {
        CHECK(res.rows[i].successes == hits[i]);
        CHECK(res.rows[i].timeouts == 0);
        CHECK(res.rows[i].ci.lo <= res.rows[i].fraction);
        CHECK(res.rows[i].ci.hi >= res.rows[i].fraction);
    }
    CHECK(res.monotonicity_violations == 0);
    CHECK(res.coupled_pairs == 60 * 10);
    CHECK(res.rows.back().fraction == 1.0);

    ThresholdScan single = scan;
    single.workers = 1;
    ScanResult again = threshold_scan(single);
    for (std::size_t i = 0; i < hits.size(); ++i) CHECK(again.rows[i].successes == res.rows[i].successes);

    ThresholdScan bad = scan;
    bad.grid = {0.5, 0.4};
    CHECK_THROWS_AS(threshold_scan(bad), std::invalid_argument);
    bad.grid = {0.0, 0.4};
    CHECK_THROWS_AS(threshold_scan(bad), std::invalid_argument);
}

TEST_CASE("threshold scan: p = 1 uses switching under the degree condition") {
    ThresholdScan scan;
    scan.host = complete_graph(10);
    scan.pattern = disjoint_union(cycle_graph(5), cycle_graph(5));
    scan.grid = {0.5, 1.0};
    scan.trials = 20;
    ScanResult res = threshold_scan(scan);
    CHECK(res.rows[1].method == "switching");
    CHECK(res.rows[1].fraction == 1.0);
    CHECK(res.rows[0].method == "search");

    scan.host = clique_overlap_dirac_host(10);
    ScanResult dirac = threshold_scan(scan);
    CHECK(dirac.rows[1].method == "search");
}

TEST_CASE("small-n sweep: C_5, a triangle and isolated vertices") {
    Thm91Options o;
    o.trials = 40;
    o.constants = {0.5, 1.0, 2.0};
    o.bad_vertex_samples = 200;
    Thm91Result res = scan_thm91_grid(o);
    // C_5 has one-density 5/4, K_3 has 3/2.
    CHECK(res.m1 == doctest::Approx(1.5));
    const double n = 12.0;
    REQUIRE_FALSE(res.m1_grid.empty());
    CHECK(res.m1_grid[0] == doctest::Approx(std::min(1.0, 0.5 * std::pow(n, -1.0 / 1.5) * std::log(n))));
    CHECK(res.improved_grid[0] ==
          doctest::Approx(std::min(1.0, 0.5 * std::pow(n, -2.0 / 3.0) * std::pow(std::log(n), 1.0 / 3.0))));
    CHECK(std::is_sorted(res.m1_grid.begin(), res.m1_grid.end()));

    Graph host = complete_graph(12);
    auto hits = recount(host, res.m1_grid, o.trials, o.seed.stream(1), has_c5_and_triangle);
    for (std::size_t i = 0; i < hits.size(); ++i) CHECK(res.m1_scan.rows[i].successes == hits[i]);
    auto hits2 = recount(host, res.improved_grid, o.trials, o.seed.stream(2), has_c5_and_triangle);
    for (std::size_t i = 0; i < hits2.size(); ++i) CHECK(res.improved_scan.rows[i].successes == hits2[i]);
    CHECK(res.m1_scan.monotonicity_violations == 0);

    CHECK_FALSE(res.bad.hypothesis);  // 11 < (3/4 + 1/5) 12
    CHECK(res.bad.frequency <= res.bad.bound + 3 * res.bad.sigma);

    Thm91Options big = o;
    big.n = 17;
    CHECK_THROWS_AS(scan_thm91_grid(big), UnsupportedSize);
    CHECK(thm91_pattern(12, 2, 1) == disjoint_union(disjoint_union(cycle_graph(5), complete_graph(3)), Graph(4)));
}

TEST_CASE("bad vertices in random k-sets stay under the tail bound") {
    Graph g = random_dense_host(40, 0.95, Seed{6});
    auto rep = bad_vertex_check(g, 2, 0.2, 20, 2000, Seed{7});
    CHECK(rep.k == 20);
    CHECK(rep.checked == 2000 * 20);
    CHECK(rep.threshold == doctest::Approx((0.75 + 0.1) * 20));
    CHECK(rep.hypothesis);
    CHECK(rep.frequency <= rep.bound + 3 * rep.sigma);
    CHECK(rep.bound == doctest::Approx(hypergeo_chernoff_bound(0.1, 2.0)));
}

TEST_CASE("hypergeometric tails stay under the bound") {
    for (double eps : {0.3, 0.5}) {
        auto rep = hypergeometric_tail(100, 40, 30, eps, 6.0, 5000, Seed{8});
        CHECK(rep.mean == doctest::Approx(12.0));
        CHECK(rep.frequency <= rep.bound + 3 * rep.sigma);
    }
}

TEST_CASE("scan output formats") {
    ScanResult r;
    ScanRow row;
    row.p = 0.5;
    row.trials = 4;
    row.successes = 2;
    row.fraction = 0.5;
    row.ci = wilson(2, 4);
    row.method = "search";
    r.rows.push_back(row);
    std::ostringstream out;
    write_scan_csv(out, r);
    CHECK(out.str().rfind("p,trials,successes,fraction,wilson_lo,wilson_hi,timeouts,unreliable,method\n0.5,4,2,0.5,",
                          0) == 0);
    BadVertexReport b;
    std::ostringstream bo;
    write_bad_vertex_csv(bo, b);
    CHECK(bo.str().rfind("k,threshold,checked,bad,frequency,bound,sigma,hypothesis\n", 0) == 0);
    Thm91Result t;
    std::ostringstream to;
    write_thm91_csv(to, t);
    CHECK(to.str() == "grid,c,p,trials,successes,fraction,wilson_lo,wilson_hi,timeouts,unreliable\n");
}
