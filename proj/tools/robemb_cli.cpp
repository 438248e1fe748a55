// robemb: command-line front end for the embedding and robustness experiments.
//
// Exit codes: 0 success, 2 invalid input, 3 infeasible parameters (also a
// stuck switching run or a failed generator), 4 scan dominated by timeouts.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "robemb/bipartite.hpp"
#include "robemb/containment.hpp"
#include "robemb/density.hpp"
#include "robemb/error.hpp"
#include "robemb/partition.hpp"
#include "robemb/pipeline_config.hpp"
#include "robemb/rga.hpp"
#include "robemb/robustness.hpp"
#include "robemb/spread_matching.hpp"
#include "robemb/switching.hpp"

using namespace robemb;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitTimeouts = 4;

struct Globals {
    std::uint64_t seed = 1;
    std::int64_t trials = 1000;
    std::string out;
    std::string graph;
    std::string config;
};

void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    body(f);
}

Graph need_graph(const Globals& g) {
    if (g.graph.empty()) throw std::invalid_argument("--graph is required");
    return read_graph_file(g.graph);
}

int run_m1(const Globals& g, const std::string& method) {
    Graph h = need_graph(g);
    OneDensity r = method == "flow"        ? max_one_density_flow(h)
                   : method == "enumerate" ? max_one_density_enumerate(h)
                                           : max_one_density(h);
    std::cout << "m1 " << r.value.str() << " " << r.value.to_double() << "\nwitness";
    for (Vertex v : r.witness) std::cout << " " << v;
    std::cout << "\n";
    return 0;
}

int run_embed_switch(const Globals& g, const std::string& pattern_path, const std::string& partial_path,
                     double gamma) {
    Graph host = need_graph(g);
    if (pattern_path.empty()) throw std::invalid_argument("--pattern is required");
    Graph h = read_graph_file(pattern_path);
    PartialEmbedding phi_s;
    if (!partial_path.empty()) {
        std::ifstream in(partial_path);
        if (!in) throw std::invalid_argument("cannot open " + partial_path);
        phi_s = read_partial_embedding(in, h, host);
    }
    if (!switching_hypothesis_holds(host, h.max_degree(), gamma, phi_s.size()))
        std::cerr << "warning: minimum degree or |S| outside the guaranteed range\n";
    SwitchResult r = switching_embed(host, h, phi_s, Seed{g.seed});
    if (!g.out.empty()) emit(g.out, [&](std::ostream& o) { write_trace_csv(o, r.trace); });
    if (!r.ok()) {
        std::cerr << "stuck after " << r.trace.size() << " swaps, " << mapped_edge_count(host, h, r.phi) << " of "
                  << h.size() << " edges mapped\n";
        return kExitInfeasible;
    }
    write_embedding(std::cout, r.phi);
    return 0;
}

int run_equitable(const Globals& g, int k) {
    Graph h = need_graph(g);
    EquitableStage stage{};
    Partition p = equitable_coloring(h, k, &stage);
    emit(g.out, [&](std::ostream& o) { write_partition(o, p); });
    const char* names[] = {"greedy", "local_search", "exhaustive"};
    std::cerr << "stage " << names[static_cast<int>(stage)] << "\n";
    return 0;
}

int run_clique_factor(const Globals& g, int r) {
    Graph host = need_graph(g);
    CliqueFactor f = clique_factor(host, r);
    emit(g.out, [&](std::ostream& o) {
        write_partition(o, f.cliques);
        o << "# leftover";
        for (Vertex v : f.leftover) o << " " << v;
        o << "\n";
    });
    return 0;
}

int run_spread_matching(const Globals& g, int c, int lambda, double p, double d, int b, double mu, double rho,
                        const std::vector<std::string>& edges, int max_resamples) {
    BipartiteGraph f;
    if (!g.graph.empty()) {
        std::ifstream in(g.graph);
        if (!in) throw std::invalid_argument("cannot open " + g.graph);
        f = read_bipartite(in);
    } else {
        if (lambda < 1) throw std::invalid_argument("either --graph or --lambda is required");
        FBParams params;
        params.d = d;
        params.b = b;
        params.max_degree = b;
        params.mu = mu;
        params.rho = rho;
        f = random_fb_instance(lambda, p, params, Seed{g.seed}.stream(50)).graph;
    }
    if (c == 0) c = std::min(f.lambda(), default_spread_constant(d, b));
    const Seed seed{g.seed};
    std::vector<SpreadEstimate> rows;
    if (!edges.empty()) {
        std::vector<std::pair<int, int>> s;
        for (const auto& e : edges) {
            auto dash = e.find('-');
            if (dash == std::string::npos) throw std::invalid_argument("edge must look like a-b: " + e);
            int a = std::stoi(e.substr(0, dash)), bb = std::stoi(e.substr(dash + 1));
            if (bb < f.lambda()) throw std::invalid_argument("B vertices are numbered from lambda: " + e);
            s.emplace_back(a, bb - f.lambda());
        }
        rows.push_back(estimate_matching_spread(f, c, s, g.trials, seed, max_resamples));
    } else {
        MatchingSweep sw = sweep_spread_matching(f, c, g.trials, seed, max_resamples);
        for (std::size_t id = 0; id < f.size(); ++id) {
            auto [a, bb] = f.edges()[id];
            rows.push_back(SpreadEstimate::from_counts(
                "match:" + std::to_string(a) + "-" + std::to_string(bb + f.lambda()), sw.matched[id], sw.successes));
        }
        std::cerr << "lambda " << f.lambda() << " C " << c << " trials " << sw.trials << " successes "
                  << sw.successes << " first-draw Hall failures " << sw.first_draw_failures << " lambda*max "
                  << f.lambda() * sw.max_matched_frequency() << "\n";
    }
    emit(g.out, [&](std::ostream& o) { write_estimates_csv(o, rows); });
    return 0;
}

int run_pipeline(const Globals& g, bool seed_set, bool trials_set, const std::string& trials_out) {
    PipelineConfig cfg;
    if (!g.config.empty()) cfg = read_pipeline_config_file(g.config);
    if (seed_set) cfg.seed = g.seed;
    if (trials_set) cfg.trials = g.trials;
    PipelineSetup s = build_pipeline(cfg);
    Rng rng(Seed{cfg.seed}.stream(300));
    const int n = s.host.g.order();
    std::vector<std::pair<Vertex, Vertex>> probes;
    std::vector<std::vector<Edge>> edge_sets;
    const auto host_edges = s.host.g.edges();
    for (int i = 0; i < cfg.probes; ++i) {
        Vertex x = rng.index(n);
        const auto& cluster = s.host.clusters[s.pattern.part_of[x]];
        probes.emplace_back(x, cluster[rng.index(cluster.size())]);
        edge_sets.push_back({host_edges[rng.index(host_edges.size())]});
    }
    PipelineStats st = sample_pipeline(s.host, s.pattern, s.rga, s.C, probes, edge_sets, cfg.trials,
                                       Seed{cfg.seed}.stream(400), cfg.max_resamples);
    std::vector<SpreadEstimate> rows = st.vertex_probes;
    rows.insert(rows.end(), st.edge_events.begin(), st.edge_events.end());
    emit(g.out, [&](std::ostream& o) { write_estimates_csv(o, rows); });
    if (!trials_out.empty()) emit(trials_out, [&](std::ostream& o) { write_trial_outcomes_csv(o, st.outcomes); });
    std::cerr << "n " << n << " C " << s.C << " attempts " << st.attempts << " successes " << st.successes
              << " n*max_probe " << st.n_times_max_probe << "\n";
    return 0;
}

Graph scan_host(const Globals& g, const std::string& kind, int n, int parts, int shift, double fraction) {
    if (!g.graph.empty()) return read_graph_file(g.graph);
    if (kind == "dirac") return clique_overlap_dirac_host(n);
    if (kind == "multipartite") return unbalanced_complete_multipartite(n, parts, shift);
    if (kind == "dense") return random_dense_host(n, fraction, Seed{g.seed}.stream(60));
    if (kind == "complete") return complete_graph(n);
    throw std::invalid_argument("unknown host kind " + kind);
}

Graph scan_pattern(const std::string& path, const std::string& kind, int n, int clique) {
    if (!path.empty()) return read_graph_file(path);
    if (kind == "matching") return perfect_matching_pattern(n);
    if (kind == "clique-factor") return clique_factor_pattern(n, clique);
    throw std::invalid_argument("unknown pattern kind " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust spanning embeddings: densities, partitions, spread measures and threshold scans"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    bool seed_set = false, trials_set = false;
    app.add_option("--seed", g.seed, "Seed for every randomized step")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--trials", g.trials, "Monte Carlo trials (successful trials for pipeline)")
        ->each([&](const std::string&) { trials_set = true; });
    app.add_option("--out", g.out, "Output path (CSV); stdout when omitted");
    app.add_option("--graph", g.graph, "Input graph file");
    app.add_option("--config", g.config, "Pipeline configuration file");

    std::function<int()> action;

    auto* m1 = app.add_subcommand("m1", "Maximum 1-density of the --graph");
    std::string m1_method = "auto";
    m1->add_option("--method", m1_method)->check(CLI::IsMember({"auto", "enumerate", "flow"}));
    m1->callback([&] { action = [&] { return run_m1(g, m1_method); }; });

    auto* sw = app.add_subcommand("embed-switch", "Embed --pattern into the host --graph by switchings");
    std::string pattern_path, partial_path;
    double sw_gamma = 0.05;
    sw->add_option("--pattern", pattern_path, "Pattern graph H")->required();
    sw->add_option("--partial", partial_path, "Prescribed partial embedding, 'x v' lines");
    sw->add_option("--gamma", sw_gamma, "Degree slack used for the hypothesis warning");
    sw->callback([&] { action = [&] { return run_embed_switch(g, pattern_path, partial_path, sw_gamma); }; });

    auto* eq = app.add_subcommand("equitable", "Equitable colouring of the --graph");
    int eq_k = 0;
    eq->add_option("-k,--colors", eq_k, "Number of colour classes")->required();
    eq->callback([&] { action = [&] { return run_equitable(g, eq_k); }; });

    auto* cf = app.add_subcommand("clique-factor", "Near-perfect K_r-tiling of the --graph");
    int cf_r = 3;
    cf->add_option("-r", cf_r, "Clique size")->required();
    cf->callback([&] { action = [&] { return run_clique_factor(g, cf_r); }; });

    auto* sm = app.add_subcommand("spread-matching", "Spread perfect matchings of a bipartite instance");
    int sm_c = 0, sm_lambda = 0, sm_b = 1, sm_resamples = 20;
    double sm_p = 0.8, sm_d = 0.8, sm_mu = 0.25, sm_rho = 0.0625;
    std::vector<std::string> sm_edges;
    sm->add_option("-C", sm_c, "Sampler constant; 0 selects ceil(8/d^b)");
    sm->add_option("--lambda", sm_lambda, "Generate a random FB-compliant instance of this size");
    sm->add_option("--p", sm_p, "Edge probability of the generated instance");
    sm->add_option("--d", sm_d, "Density parameter d");
    sm->add_option("--b", sm_b, "Constraint count b");
    sm->add_option("--mu", sm_mu, "Buffer fraction mu of the generated instance");
    sm->add_option("--rho", sm_rho, "FB3 parameter rho; W ranges over sets of at least (rho/mu) lambda");
    sm->add_option("--edge", sm_edges, "Event edge a-b (b numbered from lambda); repeat for a set");
    sm->add_option("--max-resamples", sm_resamples);
    sm->callback([&] {
        action = [&] { return run_spread_matching(g, sm_c, sm_lambda, sm_p, sm_d, sm_b, sm_mu, sm_rho, sm_edges, sm_resamples); };
    });

    auto* pl = app.add_subcommand("pipeline", "Random greedy embedding with buffers; vertex and edge spread");
    std::string pl_trials_out;
    pl->add_option("--trial-out", pl_trials_out, "CSV path for per-trial outcome rows");
    pl->callback([&] { action = [&] { return run_pipeline(g, seed_set, trials_set, pl_trials_out); }; });

    auto* sc = app.add_subcommand("scan", "Containment probability of a spanning pattern in G(p)");
    std::string host_kind = "dirac", pattern_kind = "matching", sc_pattern, grid_unit = "1";
    int sc_n = 100, sc_parts = 3, sc_shift = 1, sc_clique = 3, sc_workers = 1;
    double sc_fraction = 0.9, sc_gamma = 0.05;
    std::int64_t sc_budget = kDefaultSearchBudget;
    std::vector<double> sc_grid;
    sc->add_option("--host", host_kind, "Host when --graph is absent")
        ->check(CLI::IsMember({"dirac", "multipartite", "dense", "complete"}));
    sc->add_option("--n", sc_n, "Order of generated host and pattern");
    sc->add_option("--parts", sc_parts, "Parts of the multipartite host");
    sc->add_option("--shift", sc_shift, "Imbalance of the multipartite host");
    sc->add_option("--fraction", sc_fraction, "Minimum degree fraction of the dense host");
    sc->add_option("--pattern", sc_pattern, "Pattern graph file");
    sc->add_option("--pattern-kind", pattern_kind, "Pattern when --pattern is absent")
        ->check(CLI::IsMember({"matching", "clique-factor"}));
    sc->add_option("--clique", sc_clique, "Clique size for clique-factor patterns");
    sc->add_option("--grid", sc_grid, "Values of p, increasing")->delimiter(',')->required();
    sc->add_option("--grid-unit", grid_unit, "Multiply grid values by 1 or by ln(n)/n")
        ->check(CLI::IsMember({"1", "ln-n-over-n"}));
    sc->add_option("--gamma", sc_gamma, "Degree slack of the p = 1 switching shortcut");
    sc->add_option("--budget", sc_budget, "Search node budget per containment test");
    sc->add_option("--workers", sc_workers, "Worker threads");
    sc->callback([&] {
        action = [&] {
            ThresholdScan s;
            s.host = scan_host(g, host_kind, sc_n, sc_parts, sc_shift, sc_fraction);
            s.host_name = g.graph.empty() ? host_kind : g.graph;
            s.pattern = scan_pattern(sc_pattern, pattern_kind, s.host.order(), sc_clique);
            s.pattern_name = sc_pattern.empty() ? pattern_kind : sc_pattern;
            const double n = s.host.order();
            for (double p : sc_grid) s.grid.push_back(grid_unit == "1" ? p : p * std::log(n) / n);
            s.trials = static_cast<int>(g.trials);
            s.seed = Seed{g.seed};
            s.budget = sc_budget;
            s.gamma = sc_gamma;
            s.workers = sc_workers;
            ScanResult r = threshold_scan(s);
            emit(g.out, [&](std::ostream& o) { write_scan_csv(o, r); });
            std::cerr << s.pattern_name << " in " << s.host_name << ": coupled pairs " << r.coupled_pairs
                      << ", monotonicity violations " << r.monotonicity_violations << "\n";
            return r.timeout_dominated() ? kExitTimeouts : 0;
        };
    });

    auto* t9 = app.add_subcommand("scan-thm91", "Compare the m1 grid with the improved clique-split grid");
    Thm91Options t9o;
    std::string t9_pattern, t9_bad_out;
    t9->add_option("--delta", t9o.delta);
    t9->add_option("--n", t9o.n);
    t9->add_option("--gamma", t9o.gamma);
    t9->add_option("--constants", t9o.constants)->delimiter(',');
    t9->add_option("--pattern", t9_pattern, "Pattern graph file; C_5 + K_{delta+1} + isolated when absent");
    t9->add_option("--bad-samples", t9o.bad_vertex_samples);
    t9->add_option("--bad-out", t9_bad_out, "CSV path for the bad-vertex report; stderr when absent");
    t9->add_option("--budget", t9o.budget);
    t9->add_option("--workers", t9o.workers);
    t9->callback([&] {
        action = [&] {
            t9o.trials = static_cast<int>(g.trials);
            t9o.seed = Seed{g.seed};
            if (!g.graph.empty()) t9o.host = read_graph_file(g.graph);
            if (!t9_pattern.empty()) t9o.pattern = read_graph_file(t9_pattern);
            Thm91Result r = scan_thm91_grid(t9o);
            emit(g.out, [&](std::ostream& o) { write_thm91_csv(o, r); });
            if (t9_bad_out.empty())
                write_bad_vertex_csv(std::cerr, r.bad);
            else
                emit(t9_bad_out, [&](std::ostream& o) { write_bad_vertex_csv(o, r.bad); });
            return r.timeout_dominated() ? kExitTimeouts : 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }
    try {
        return action();
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const UnsupportedSize& e) {
        std::cerr << "unsupported size: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    }
}
