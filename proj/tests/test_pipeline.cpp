#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "helpers.hpp"
#include "oracles.hpp"
#include "robemb/bipartite.hpp"
#include "robemb/error.hpp"
#include "robemb/pipeline_config.hpp"
#include "robemb/regularity.hpp"
#include "robemb/rga.hpp"
#include "robemb/switching.hpp"

using namespace robemb;

namespace {

const PartitionedHost& small_host() {
    static const PartitionedHost host = generate_regular_host(complete_graph(3), complete_graph(3), 20, 0.4, Seed{9});
    return host;
}

const PartitionedPattern& small_pattern() {
    static const PartitionedPattern p =
        partition_pattern(clique_factor_pattern(60, 3), small_host(), {}, 0.25, Seed{10});
    return p;
}

bool respects_clusters(const PartitionedHost& host, const PartitionedPattern& p, const std::vector<Vertex>& phi) {
    for (Vertex x = 0; x < p.h.order(); ++x)
        if (phi[x] < 0 || host.cluster_of[phi[x]] != p.part_of[x]) return false;
    return true;
}

}  // namespace

TEST_CASE("host generation: clusters, edges along R only, regular pairs") {
    GraphBuilder rp(3);
    rp.add_edge(0, 1);
    PartitionedHost host = generate_regular_host(path_graph(3), rp.build(), 20, 0.3, Seed{4});
    REQUIRE(host.clusters.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(host.clusters[i] == testutil::range(20 * i, 20 * (i + 1)));
        for (Vertex v : host.clusters[i]) CHECK(host.cluster_of[v] == i);
    }
    for (auto [u, v] : host.g.edges()) {
        const int cu = host.cluster_of[u], cv = host.cluster_of[v];
        CHECK(cu != cv);
        CHECK(host.r.adjacent(cu, cv));
    }
    RegPairParams reg{host.params.eps, 0.3};
    CHECK(check_regular_pair(host.g, host.clusters[1], host.clusters[2], reg, RegularityMode::refute, 2000, Seed{1})
              .passed());
    RegPairParams super{host.params.eps, 0.6};
    CHECK(check_super_regular_pair(host.g, host.clusters[0], host.clusters[1], super, RegularityMode::refute, 2000,
                                   Seed{2})
              .passed());
    CHECK(host.params.r1 == 3);

    CHECK_THROWS_AS(generate_regular_host(path_graph(3), rp.build(), 10, 0.3, Seed{}), std::invalid_argument);
    CHECK_THROWS_AS(generate_regular_host(path_graph(3), rp.build(), 20, 0.7, Seed{}), std::invalid_argument);

    Graph blow = reduced_blow_up(host);
    CHECK(blow.size() == 2u * 20u * 20u);
    CHECK(blow.adjacent(0, 20));
    CHECK_FALSE(blow.adjacent(0, 40));
}

TEST_CASE("partitioned pattern: structure, buffers and prescribed vertices") {
    const auto& host = small_host();
    const auto& p = small_pattern();
    CHECK(check_partitioned_pattern(p, host).ok());
    const auto dist = oracle::distances(p.h);
    for (int i = 0; i < 3; ++i) {
        CHECK(p.parts[i].size() == 20u);
        CHECK(p.buffers[i].size() >= 5u);
        for (Vertex x : p.buffers[i]) CHECK(p.part_of[x] == i);
    }
    std::vector<Vertex> all;
    for (const auto& b : p.buffers) all.insert(all.end(), b.begin(), b.end());
    for (Vertex x : all)
        for (Vertex y : all)
            if (x != y) CHECK((dist[x][y] < 0 || dist[x][y] > 5));

    // Pin one triangle into three different clusters.
    std::vector<std::vector<Vertex>> xstar{{3}, {4}, {5}};
    PartitionedPattern q = partition_pattern(clique_factor_pattern(60, 3), host, xstar, 0.25, Seed{11});
    auto chk = check_partitioned_pattern(q, host, xstar);
    CHECK(chk.ok());
    CHECK(q.part_of[3] == 0);
    CHECK(q.part_of[4] == 1);
    CHECK(q.part_of[5] == 2);

    CHECK_THROWS_AS(partition_pattern(clique_factor_pattern(60, 3), host, {{1}}, 0.25, Seed{}), std::invalid_argument);
    CHECK_THROWS_AS(partition_pattern(clique_factor_pattern(60, 3), host, {}, 0.0, Seed{}), std::invalid_argument);

    PartitionedPattern broken = p;
    std::swap(broken.part_of[0], broken.part_of[1]);
    CHECK_FALSE(check_partitioned_pattern(broken, host).ok());
}

TEST_CASE("RGA: edgeless pattern, valid partial embeddings, starvation") {
    const auto& host = small_host();
    PartitionedPattern edgeless = small_pattern();
    edgeless.h = Graph(60);
    RGAConfig cfg;
    auto r = rga_embed(host, edgeless, cfg, Seed{1});
    CHECK(r.success);
    CHECK(r.failed_step == -1);

    const auto& p = small_pattern();
    for (int t = 0; t < 30; ++t) {
        auto res = rga_embed(host, p, cfg, Seed{100u + t});
        REQUIRE(res.success);
        std::vector<char> buffer(60, 0);
        for (const auto& b : res.buffers) {
            CHECK(b.size() == 5u);
            for (Vertex x : b) buffer[x] = 1;
        }
        std::vector<char> used(60, 0);
        for (Vertex x = 0; x < 60; ++x) {
            if (buffer[x]) {
                CHECK(res.phi[x] == -1);
                continue;
            }
            REQUIRE(res.phi[x] >= 0);
            CHECK(host.cluster_of[res.phi[x]] == p.part_of[x]);
            CHECK_FALSE(used[res.phi[x]]);
            used[res.phi[x]] = 1;
            for (Vertex y : p.h.neighbors(x))
                if (!buffer[y]) CHECK(host.g.adjacent(res.phi[x], res.phi[y]));
        }
        CHECK(res.candidate_sizes.size() == res.order.size());
    }

    RGAConfig greedy = cfg;
    greedy.theta = 1.0;  // every candidate set must be the whole cluster
    auto starve = rga_embed(host, p, greedy, Seed{3});
    CHECK_FALSE(starve.success);
    CHECK(starve.failed_step >= 1);
}

TEST_CASE("buffer completion and full trials give embeddings") {
    const auto& host = small_host();
    const auto& p = small_pattern();
    RGAConfig cfg;
    int ok = 0;
    for (int t = 0; t < 50; ++t) {
        auto trial = run_pipeline_trial(host, p, cfg, 4, Seed{500u + t});
        if (!trial.success) {
            CHECK((trial.failed_stage == "rga" || trial.failed_stage == "buffer"));
            continue;
        }
        ++ok;
        CHECK(is_embedding(host.g, p.h, trial.phi));
        CHECK(respects_clusters(host, p, trial.phi));
    }
    CHECK(ok >= 40);

    auto main = rga_embed(host, p, cfg, Seed{7});
    REQUIRE(main.success);
    std::vector<Vertex> side_a, side_b;
    BipartiteGraph bg = buffer_graph(host, p, main, 0, &side_a, &side_b);
    CHECK(bg.lambda() == 5);
    CHECK(side_a == main.buffers[0]);
    for (auto [a, b] : bg.edges())
        for (Vertex y : p.h.neighbors(side_a[a])) CHECK(host.g.adjacent(side_b[b], main.phi[y]));

    // No buffers: completion has nothing to do.
    RGAConfig none = cfg;
    none.mu = 0.0;
    auto bare = rga_embed(host, p, none, Seed{8});
    REQUIRE(bare.success);
    auto done = complete_with_buffers(host, p, bare, 4, Seed{9});
    CHECK(done.success);
    CHECK(done.phi == bare.phi);
}

TEST_CASE("pipeline estimates: trivial probes and events") {
    PipelineConfig cfg;
    cfg.m = 20;
    cfg.d = 0.4;
    cfg.C = 4;
    cfg.pattern = "matching";
    PipelineSetup s = build_pipeline(cfg);
    Vertex x = 0;
    const int part = s.pattern.part_of[x];
    const Vertex inside = s.host.clusters[part][0], outside = s.host.clusters[(part + 1) % 3][0];
    // Two host edges sharing the vertex `inside` cannot both be images of a matching.
    const Vertex w1 = s.host.g.neighbors(inside)[0], w2 = s.host.g.neighbors(inside)[1];
    std::vector<std::vector<Edge>> events{{}, {{inside, w1}, {inside, w2}}};
    auto stats = sample_pipeline(s.host, s.pattern, s.rga, s.C, {{x, inside}, {x, outside}}, events, 1000, Seed{3});
    CHECK(stats.successes == 1000);
    CHECK(stats.attempts >= 1000);
    CHECK(stats.outcomes.size() == static_cast<std::size_t>(stats.attempts));
    CHECK(stats.vertex_probes[1].hits == 0);
    CHECK(stats.edge_events[0].estimate == 1.0);
    CHECK(stats.edge_events[1].hits == 0);
    CHECK(stats.n_times_max_probe >= 0.0);

    std::ostringstream csv;
    write_trial_outcomes_csv(csv, {{0, true, "", -1, -1}, {1, false, "buffer", -1, 2}});
    CHECK(csv.str() == "trial,success,failed_stage,failed_step,failed_part\n0,1,,-1,-1\n1,0,buffer,-1,2\n");

    CHECK_THROWS_AS(sample_pipeline(s.host, s.pattern, s.rga, s.C, {}, {}, 10, Seed{}), std::invalid_argument);
}

TEST_CASE("pipeline config parsing") {
    std::istringstream in("# triangle run\nm = 40\nC=4\n  d = 0.3  # comment\npattern = matching\nseed = 17\n");
    PipelineConfig c = parse_pipeline_config(in);
    CHECK(c.m == 40);
    CHECK(c.C == 4);
    CHECK(c.d == doctest::Approx(0.3));
    CHECK(c.pattern == "matching");
    CHECK(c.seed == 17u);
    CHECK(c.r == 3);

    std::istringstream unknown("m = 40\nfoo = 1\n");
    CHECK_THROWS_AS(parse_pipeline_config(unknown), std::invalid_argument);
    std::istringstream bad_value("m = forty\n");
    CHECK_THROWS_AS(parse_pipeline_config(bad_value), std::invalid_argument);
    std::istringstream bad_pattern("pattern = star\n");
    CHECK_THROWS_AS(parse_pipeline_config(bad_pattern), std::invalid_argument);
    std::istringstream no_eq("m 40\n");
    CHECK_THROWS_AS(parse_pipeline_config(no_eq), std::invalid_argument);
    CHECK_THROWS_AS(read_pipeline_config_file("/nonexistent/robemb.cfg"), std::invalid_argument);

    PipelineConfig odd;
    odd.r = 4;
    CHECK_THROWS_AS(build_pipeline(odd), std::invalid_argument);
    CHECK(clique_factor_pattern(6, 3).size() == 6u);
    CHECK(perfect_matching_pattern(6).size() == 3u);
    CHECK_THROWS_AS(clique_factor_pattern(7, 3), std::invalid_argument);
}

TEST_CASE("buffer candidate graphs are checked against FB1-FB3") {
    // Five buffer vertices per part: violations are reported, not failed, since
    // the conditions are only guaranteed for large clusters.
    const auto& host = small_host();
    const auto& p = small_pattern();
    FBParams fb;
    fb.d = 0.8;  // density along R' pairs (2d)
    fb.b = p.h.max_degree();
    fb.max_degree = p.h.max_degree();
    fb.mu = 0.25;
    fb.rho = 0.0625;
    int parts = 0, fb1 = 0, fb2 = 0, fb3 = 0;
    for (int t = 0; t < 20; ++t) {
        auto main = rga_embed(host, p, RGAConfig{}, Seed{900u + t});
        REQUIRE(main.success);
        for (int i = 0; i < 3; ++i) {
            FBReport r = check_fb_conditions({buffer_graph(host, p, main, i), fb});
            ++parts;
            fb1 += r.fb1;
            fb2 += r.fb2;
            fb3 += r.fb3;
        }
    }
    MESSAGE("FB1 " << fb1 << "/" << parts << ", FB2 " << fb2 << "/" << parts << ", FB3 " << fb3 << "/" << parts);
    CHECK(parts == 60);
    WARN(fb1 == parts);
    WARN(fb2 == parts);
    WARN(fb3 == parts);
}
