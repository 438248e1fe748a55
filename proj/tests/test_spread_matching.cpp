#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "robemb/bipartite.hpp"
#include "robemb/error.hpp"
#include "robemb/spread_matching.hpp"

using namespace robemb;

namespace {

BipartiteGraph complete_bip(int lambda) {
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < lambda; ++a)
        for (int b = 0; b < lambda; ++b) e.emplace_back(a, b);
    return BipartiteGraph(lambda, e);
}

BipartiteGraph random_bip(int lambda, double p, Seed seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < lambda; ++a)
        for (int b = 0; b < lambda; ++b)
            if (rng.bernoulli(p)) e.emplace_back(a, b);
    return BipartiteGraph(lambda, e);
}

std::vector<std::vector<char>> matrix(const BipartiteGraph& f, const EdgeMask* mask = nullptr) {
    std::vector<std::vector<char>> m(f.lambda(), std::vector<char>(f.lambda(), 0));
    for (std::size_t id = 0; id < f.size(); ++id)
        if (!mask || (*mask)[id]) m[f.edges()[id].first][f.edges()[id].second] = 1;
    return m;
}

FBParams acceptance_params() {
    FBParams p;
    p.d = 0.8;
    p.b = 1;
    p.max_degree = 1;
    p.mu = 0.25;
    p.rho = 0.0625;
    return p;
}

}  // namespace

TEST_CASE("bipartite graph basics and text format") {
    BipartiteGraph f(3, {{2, 0}, {0, 1}, {0, 0}});
    CHECK(f.edges() == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {2, 0}});
    CHECK(f.edge_id(2, 0) == 2);
    CHECK(f.edge_id(1, 1) == -1);
    CHECK(f.degree_a(0) == 2);
    CHECK(f.degree_b(0) == 2);
    CHECK_THROWS_AS(BipartiteGraph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(BipartiteGraph(2, {{0, 1}, {0, 1}}), std::invalid_argument);
    std::ostringstream out;
    write_bipartite(out, f);
    CHECK(out.str() == "bipartite 3\n0 3\n0 4\n2 3\n");
    std::istringstream in(out.str());
    CHECK(read_bipartite(in).edges() == f.edges());
    std::istringstream bad("bipartite 2\n0 1\n");
    CHECK_THROWS_AS(read_bipartite(bad), std::invalid_argument);
}

TEST_CASE("coupled sample: definitions") {
    BipartiteGraph k = complete_bip(5);
    auto s = sample_coupled(k, 5, Seed{1});
    for (char c : s.z1) CHECK(c == 1);
    CHECK_THROWS_AS(sample_coupled(k, 6, Seed{1}), std::invalid_argument);
    CHECK_THROWS_AS(sample_coupled(k, 0, Seed{1}), std::invalid_argument);

    // a = 0 has the single neighbour b = 3, so its draws always hit that edge.
    BipartiteGraph f(4, {{0, 3}, {1, 0}, {1, 1}, {2, 2}, {3, 3}, {2, 1}});
    for (int t = 0; t < 20; ++t) {
        auto z = sample_coupled(f, 2, Seed{static_cast<std::uint64_t>(t)});
        CHECK(z.z2[f.edge_id(0, 3)] == 1);
        std::size_t in_z2 = 0;
        for (std::size_t id = 0; id < f.size(); ++id) {
            CHECK(z.z[id] == (z.z1[id] || z.z2[id]));
            in_z2 += z.z2[id];
        }
        CHECK(in_z2 <= 2u * 2u * 4u);
    }
    CHECK(sample_coupled(f, 2, Seed{9}).z == sample_coupled(f, 2, Seed{9}).z);
}

TEST_CASE("coupled sample: per-edge inclusion on K_{5,5} matches the closed form") {
    // P(e not in Z) = (1 - C/l) * ((1 - 1/l)^C)^2 with l = 5, C = 2.
    const double exact = 1.0 - (1.0 - 2.0 / 5.0) * std::pow(std::pow(1.0 - 1.0 / 5.0, 2), 2);
    BipartiteGraph k = complete_bip(5);
    const int trials = 100000;
    std::vector<int> hits(k.size(), 0);
    for (int t = 0; t < trials; ++t) {
        auto z = sample_coupled(k, 2, Seed{12345}.child(static_cast<std::uint64_t>(t)));
        for (std::size_t id = 0; id < k.size(); ++id) hits[id] += z.z[id];
    }
    const double sigma = std::sqrt(exact * (1 - exact) / trials);
    for (int h : hits) CHECK(std::abs(static_cast<double>(h) / trials - exact) <= 3 * sigma);
}

TEST_CASE("Hall check") {
    BipartiteGraph pm(4, {{0, 2}, {1, 0}, {2, 3}, {3, 1}});
    auto ok = hall_check(pm);
    CHECK(ok.satisfied);
    CHECK(ok.matching.size == 4);

    BipartiteGraph iso(3, {{1, 0}, {1, 1}, {2, 2}});
    auto bad = hall_check(iso);
    CHECK_FALSE(bad.satisfied);
    CHECK(bad.witness == std::vector<int>{0});
    CHECK(bad.witness_neighbors.empty());

    for (int t = 0; t < 40; ++t) {
        BipartiteGraph f = random_bip(8, 0.3, Seed{40u + t});
        auto h = hall_check(f);
        CHECK(h.satisfied == oracle::has_perfect_matching(matrix(f)));
        if (!h.satisfied) {
            CHECK(h.witness_neighbors.size() < h.witness.size());
            std::vector<int> nb;
            for (int a : h.witness)
                for (int id : f.edges_at_a(a)) nb.push_back(f.edges()[id].second);
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            CHECK(nb == h.witness_neighbors);
        } else {
            for (int a = 0; a < 8; ++a) CHECK(f.edge_id(a, h.matching.mate_a[a]) >= 0);
        }
    }
}

TEST_CASE("maximum matching honours the mask and is a fixed function of it") {
    BipartiteGraph k = complete_bip(4);
    EdgeMask diag(k.size(), 0);
    for (int i = 0; i < 4; ++i) diag[k.edge_id(i, (i + 1) % 4)] = 1;
    auto m = maximum_matching(k, &diag);
    CHECK(m.size == 4);
    for (int a = 0; a < 4; ++a) CHECK(m.mate_a[a] == (a + 1) % 4);
    BipartiteGraph f = random_bip(10, 0.4, Seed{3});
    auto m1 = maximum_matching(f), m2 = maximum_matching(f);
    CHECK(m1.mate_a == m2.mate_a);
}

TEST_CASE("spread matching sampler: outputs are perfect matchings inside Z") {
    BipartiteGraph k = complete_bip(6);
    std::vector<int> row(6, 0);
    for (int t = 0; t < 500; ++t) {
        auto r = sample_spread_matching(k, 4, 20, Seed{7}.child(static_cast<std::uint64_t>(t)));
        REQUIRE(r.success);
        CHECK(r.matching.size == 6);
        auto z = sample_coupled(k, 4, Seed{7}.child(static_cast<std::uint64_t>(t)).stream(r.draws - 1));
        for (int a = 0; a < 6; ++a) CHECK(z.z[k.edge_id(a, r.matching.mate_a[a])] == 1);
        for (int b = 0; b < 6; ++b) row[0] += r.matching.mate_a[0] == b;
    }
    CHECK(row[0] == 500);  // vertex 0 is matched exactly once per sample

    BipartiteGraph iso(3, {{1, 0}, {1, 1}, {2, 2}});
    for (int t = 0; t < 10; ++t) {
        auto r = sample_spread_matching(iso, 1, 5, Seed{static_cast<std::uint64_t>(t)});
        CHECK_FALSE(r.success);
        CHECK(r.draws == 6);
    }
    CHECK_THROWS_AS(sample_spread_matching(iso, 1, -1, Seed{}), std::invalid_argument);
}

TEST_CASE("matching spread estimates: degenerate events") {
    BipartiteGraph k = complete_bip(6);
    auto e = estimate_matching_spread(k, 4, {}, 100, Seed{1});
    CHECK(e.estimate == 1.0);
    CHECK(e.hits == 100);
    auto z = estimate_matching_spread(k, 4, {{0, 1}, {2, 1}}, 100, Seed{1});
    CHECK(z.estimate == 0.0);
    CHECK(z.hits == 0);
    CHECK(z.event == "match:0-7;2-7");
    BipartiteGraph f(2, {{0, 0}, {1, 1}});
    CHECK(estimate_matching_spread(f, 1, {{0, 1}}, 10, Seed{1}).hits == 0);  // not an edge of F
}

TEST_CASE("matching spread estimates agree with a reference run at another seed") {
    // The canonical matching breaks the symmetry of K_{6,6}, so the reference
    // is a second, larger run rather than 1/6.
    BipartiteGraph k = complete_bip(6);
    for (auto s : std::vector<std::vector<std::pair<int, int>>>{{{0, 0}}, {{3, 2}}, {{5, 5}}}) {
        auto est = estimate_matching_spread(k, 4, s, 4000, Seed{100});
        auto ref = estimate_matching_spread(k, 4, s, 40000, Seed{200});
        CHECK(std::abs(est.estimate - ref.estimate) <= est.radius + ref.radius);
    }
    // Row sums: over all b the frequencies of (a, b) add up to one.
    auto sw = sweep_spread_matching(k, 4, 3000, Seed{5});
    for (int a = 0; a < 6; ++a) {
        std::int64_t total = 0;
        for (int b = 0; b < 6; ++b) total += sw.matched[k.edge_id(a, b)];
        CHECK(total == sw.successes);
    }
}

TEST_CASE("sweep and single-event estimates count the same draws") {
    BipartiteGraph f = random_bip(8, 0.7, Seed{8});
    const int c = 3;
    auto sw = sweep_spread_matching(f, c, 500, Seed{21});
    for (int id : {0, 5, 11}) {
        auto [a, b] = f.edges()[id];
        auto e = estimate_matching_spread(f, c, {{a, b}}, 500, Seed{21});
        CHECK(e.hits == sw.matched[id]);
        CHECK(e.trials == sw.successes);
    }
}

TEST_CASE("spread constants and the per-edge bound") {
    CHECK(default_spread_constant(0.8, 1) == 10);
    CHECK(default_spread_constant(0.5, 2) == 32);
    CHECK_THROWS_AS(default_spread_constant(0.0, 1), std::invalid_argument);
    FBParams p = acceptance_params();
    CHECK(per_edge_inclusion_bound(p, 4, 10) == doctest::Approx(2.0 * 4 * (200.0 / 0.8) / 10));
}

TEST_CASE("spread estimate records") {
    auto e = SpreadEstimate::from_counts("x", 3, 10);
    CHECK(e.estimate == doctest::Approx(0.3));
    CHECK(e.lo < 0.3);
    CHECK(e.hi > 0.3);
    auto m = e.merged(SpreadEstimate::from_counts("x", 7, 10));
    CHECK(m.hits == 10);
    CHECK(m.trials == 20);
    CHECK_THROWS_AS(e.merged(SpreadEstimate::from_counts("y", 1, 1)), std::invalid_argument);
    std::ostringstream out;
    write_estimates_csv(out, {e});
    CHECK(out.str().rfind("event,trials,hits,estimate,radius\nx,10,3,0.3,", 0) == 0);
}

TEST_CASE("coupling: decreasing events are rarer under Z") {
    BipartiteGraph k = complete_bip(4);
    const int c = 2;
    auto chk = verify_coupling_monotone(k, c, event_edge_absent(k.edge_id(1, 2)), 20000, Seed{31});
    CHECK_FALSE(chk.violated);
    CHECK(chk.z.estimate <= std::min(chk.z1.estimate, chk.z2.estimate) + chk.z.radius);
    // Closed forms: Z1 misses the edge with probability 1 - C/l; Z2 when all
    // 2C draws at its two endpoints miss it.
    CHECK(std::abs(chk.z1.estimate - (1.0 - 2.0 / 4.0)) <= chk.z1.radius);
    CHECK(std::abs(chk.z2.estimate - std::pow(0.75, 4)) <= chk.z2.radius);

    SampleEvent empty = [](const BipartiteGraph&, const EdgeMask& m) {
        return std::none_of(m.begin(), m.end(), [](char x) { return x != 0; });
    };
    auto full = verify_coupling_monotone(k, 4, empty, 200, Seed{1});
    CHECK(full.z.hits == 0);
    CHECK_FALSE(full.violated);

    FBInstance inst = random_fb_instance(10, 0.8, acceptance_params(), Seed{77});
    auto hall = verify_coupling_monotone(inst.graph, 4, event_hall_violated(), 2000, Seed{78});
    CHECK_FALSE(hall.violated);
}

TEST_CASE("edge events of a matching are independent in Z") {
    BipartiteGraph k = complete_bip(6);
    const int trials = 40000;
    const int e1 = k.edge_id(0, 0), e2 = k.edge_id(1, 1);
    std::int64_t n1 = 0, n2 = 0, n12 = 0;
    for (int t = 0; t < trials; ++t) {
        auto z = sample_coupled(k, 2, Seed{55}.child(static_cast<std::uint64_t>(t)));
        n1 += z.z[e1];
        n2 += z.z[e2];
        n12 += z.z[e1] && z.z[e2];
    }
    const double p1 = static_cast<double>(n1) / trials, p2 = static_cast<double>(n2) / trials;
    const double cov = static_cast<double>(n12) / trials - p1 * p2;
    // Standard error of the empirical covariance is about sqrt(p1 p2 (1-p1)(1-p2) / trials).
    const double se = std::sqrt(p1 * p2 * (1 - p1) * (1 - p2) / trials);
    CHECK(std::abs(cov) <= 3 * se);
}

TEST_CASE("FB conditions") {
    FBParams p = acceptance_params();
    FBReport full = check_fb_conditions({complete_bip(8), p});
    CHECK(full.ok());
    CHECK(full.fb3_exact);

    // a = 0 sees only one vertex of B: FB1 fails.
    std::vector<std::pair<int, int>> e{{0, 0}};
    for (int a = 1; a < 8; ++a)
        for (int b = 0; b < 8; ++b) e.emplace_back(a, b);
    FBReport low = check_fb_conditions({BipartiteGraph(8, e), p});
    CHECK_FALSE(low.fb1);
    CHECK(low.fb1_violations == 1);
    CHECK(low.fb2);

    // Four vertices of A miss the same three vertices of B; at most three may be
    // sparse into a W of size three.
    std::vector<std::pair<int, int>> e3;
    for (int a = 0; a < 12; ++a)
        for (int b = 0; b < 12; ++b)
            if (!(a < 4 && b < 3)) e3.emplace_back(a, b);
    FBReport f3 = check_fb_conditions({BipartiteGraph(12, e3), p});
    CHECK(f3.fb1);
    CHECK_FALSE(f3.fb3);
    CHECK(f3.fb3_witness.size() >= 3);

    FBInstance big = random_fb_instance(40, 0.8, p, Seed{2});
    FBReport r = check_fb_conditions(big, Seed{3});
    CHECK(r.ok());
    CHECK_FALSE(r.fb3_exact);
    CHECK_THROWS_AS(FBParams({0.8, 2, 0.0, 0.25, 1}).validate(), std::invalid_argument);
}
