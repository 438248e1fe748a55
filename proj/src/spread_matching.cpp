#include "robemb/spread_matching.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "robemb/error.hpp"
#include "robemb/stats.hpp"

namespace robemb {

CoupledSample sample_coupled(const BipartiteGraph& f, int c, Seed seed) {
    const int n = f.lambda();
    if (c < 1 || c > n) throw std::invalid_argument("coupled sample: C must lie in [1, lambda]");
    Rng rng(seed);
    CoupledSample s;
    s.z1.assign(f.size(), 0);
    s.z2.assign(f.size(), 0);
    const double p = static_cast<double>(c) / n;
    for (std::size_t id = 0; id < f.size(); ++id) s.z1[id] = rng.bernoulli(p) ? 1 : 0;
    for (int a = 0; a < n; ++a) {
        const auto& ids = f.edges_at_a(a);
        if (ids.empty()) continue;
        for (int t = 0; t < c; ++t) s.z2[ids[rng.below(ids.size())]] = 1;
    }
    for (int b = 0; b < n; ++b) {
        const auto& ids = f.edges_at_b(b);
        if (ids.empty()) continue;
        for (int t = 0; t < c; ++t) s.z2[ids[rng.below(ids.size())]] = 1;
    }
    s.z.resize(f.size());
    for (std::size_t id = 0; id < f.size(); ++id) s.z[id] = (s.z1[id] || s.z2[id]) ? 1 : 0;
    return s;
}

int default_spread_constant(double d, int b) {
    if (!(d > 0.0 && d <= 1.0) || b < 1) throw std::invalid_argument("default spread constant: bad d or b");
    return static_cast<int>(std::ceil(8.0 / std::pow(d, b) - 1e-9));
}

double per_edge_inclusion_bound(const FBParams& params, int c, int lambda) {
    params.validate();
    if (lambda < 1) throw std::invalid_argument("per-edge bound: lambda must be positive");
    const double cprime = c * std::pow(200.0 / std::pow(params.d, params.max_degree), params.b);
    return 2.0 * cprime / lambda;
}

SpreadEstimate SpreadEstimate::from_counts(std::string event, std::int64_t hits, std::int64_t trials) {
    SpreadEstimate e;
    e.event = std::move(event);
    e.trials = trials;
    e.hits = hits;
    e.estimate = trials > 0 ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
    Interval ci = clopper_pearson(hits, trials, 0.99);
    e.lo = ci.lo;
    e.hi = ci.hi;
    e.radius = std::max(e.estimate - e.lo, e.hi - e.estimate);
    return e;
}

SpreadEstimate SpreadEstimate::merged(const SpreadEstimate& other) const {
    if (other.event != event) throw std::invalid_argument("cannot merge estimates of different events");
    return from_counts(event, hits + other.hits, trials + other.trials);
}

void write_estimates_csv(std::ostream& out, const std::vector<SpreadEstimate>& rows) {
    out << "event,trials,hits,estimate,radius\n";
    for (const auto& r : rows) out << r.event << "," << r.trials << "," << r.hits << "," << r.estimate << "," << r.radius << "\n";
}

SpreadMatchingResult sample_spread_matching(const BipartiteGraph& f, int c, int max_resamples, Seed seed) {
    if (max_resamples < 0) throw std::invalid_argument("spread matching: negative resample budget");
    SpreadMatchingResult res;
    for (int draw = 0; draw <= max_resamples; ++draw) {
        CoupledSample z = sample_coupled(f, c, seed.stream(static_cast<std::uint64_t>(draw)));
        res.draws = draw + 1;
        res.last = hall_check(f, &z.z);
        if (res.last.satisfied) {
            res.success = true;
            res.matching = res.last.matching;
            return res;
        }
    }
    return res;
}

SpreadEstimate estimate_matching_spread(const BipartiteGraph& f, int c, const std::vector<std::pair<int, int>>& s,
                                        std::int64_t trials, Seed seed, int max_resamples) {
    std::string name = "match:";
    for (std::size_t i = 0; i < s.size(); ++i)
        name += (i ? ";" : "") + std::to_string(s[i].first) + "-" + std::to_string(s[i].second + f.lambda());
    if (trials < 0) throw std::invalid_argument("spread estimate: negative trial count");
    if (s.empty()) return SpreadEstimate::from_counts(name, trials, trials);
    std::vector<char> seen_a(f.lambda(), 0), seen_b(f.lambda(), 0);
    for (auto [a, b] : s) {
        if (a < 0 || b < 0 || a >= f.lambda() || b >= f.lambda() || f.edge_id(a, b) < 0 || seen_a[a] || seen_b[b])
            return SpreadEstimate::from_counts(name, 0, trials);
        seen_a[a] = seen_b[b] = 1;
    }
    std::int64_t successes = 0, hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        auto r = sample_spread_matching(f, c, max_resamples, seed.child(static_cast<std::uint64_t>(t)));
        if (!r.success) continue;
        ++successes;
        bool all = std::all_of(s.begin(), s.end(), [&](const auto& e) { return r.matching.mate_a[e.first] == e.second; });
        if (all) ++hits;
    }
    return SpreadEstimate::from_counts(name, hits, successes);
}

double MatchingSweep::max_matched_frequency() const {
    if (successes == 0) return 0.0;
    std::int64_t best = matched.empty() ? 0 : *std::max_element(matched.begin(), matched.end());
    return static_cast<double>(best) / static_cast<double>(successes);
}

MatchingSweep sweep_spread_matching(const BipartiteGraph& f, int c, std::int64_t trials, Seed seed,
                                    int max_resamples) {
    if (trials < 1) throw std::invalid_argument("matching sweep: trials must be positive");
    MatchingSweep sw;
    sw.trials = trials;
    sw.in_z.assign(f.size(), 0);
    sw.matched.assign(f.size(), 0);
    for (std::int64_t t = 0; t < trials; ++t) {
        const Seed ts = seed.child(static_cast<std::uint64_t>(t));
        // Draw 0 of sample_spread_matching uses this stream.
        CoupledSample first = sample_coupled(f, c, ts.stream(0));
        for (std::size_t id = 0; id < f.size(); ++id) sw.in_z[id] += first.z[id];
        auto r = sample_spread_matching(f, c, max_resamples, ts);
        if (r.draws > 1 || !r.success) ++sw.first_draw_failures;
        if (!r.success) continue;
        ++sw.successes;
        for (int a = 0; a < f.lambda(); ++a) ++sw.matched[f.edge_id(a, r.matching.mate_a[a])];
    }
    return sw;
}

FBInstance random_fb_instance(int lambda, double p, const FBParams& params, Seed seed, int max_attempts) {
    params.validate();
    if (lambda < 1 || !(p > 0.0 && p <= 1.0)) throw std::invalid_argument("FB instance: bad lambda or p");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(seed.stream(static_cast<std::uint64_t>(attempt)));
        std::vector<std::pair<int, int>> edges;
        for (int a = 0; a < lambda; ++a)
            for (int b = 0; b < lambda; ++b)
                if (rng.bernoulli(p)) edges.emplace_back(a, b);
        FBInstance inst{BipartiteGraph(lambda, edges), params};
        if (check_fb_conditions(inst, seed.stream(1000 + attempt)).ok()) return inst;
    }
    throw GenerationFailed("FB instance: no draw satisfied FB1-FB3");
}

SampleEvent event_edge_absent(int edge_id) {
    return [edge_id](const BipartiteGraph&, const EdgeMask& m) { return !m[edge_id]; };
}

SampleEvent event_hall_violated() {
    return [](const BipartiteGraph& f, const EdgeMask& m) { return !hall_check(f, &m).satisfied; };
}

CouplingCheck verify_coupling_monotone(const BipartiteGraph& f, int c, const SampleEvent& event,
                                       std::int64_t trials, Seed seed) {
    std::int64_t hz = 0, h1 = 0, h2 = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        CoupledSample s = sample_coupled(f, c, seed.child(static_cast<std::uint64_t>(t)));
        hz += event(f, s.z) ? 1 : 0;
        h1 += event(f, s.z1) ? 1 : 0;
        h2 += event(f, s.z2) ? 1 : 0;
    }
    CouplingCheck chk;
    chk.z = SpreadEstimate::from_counts("Z", hz, trials);
    chk.z1 = SpreadEstimate::from_counts("Z1", h1, trials);
    chk.z2 = SpreadEstimate::from_counts("Z2", h2, trials);
    const SpreadEstimate& lower = chk.z1.estimate <= chk.z2.estimate ? chk.z1 : chk.z2;
    chk.violated = chk.z.estimate > lower.estimate + chk.z.radius + lower.radius;
    return chk;
}

}  // namespace robemb
