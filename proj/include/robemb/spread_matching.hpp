#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "robemb/bipartite.hpp"
#include "robemb/rng.hpp"

namespace robemb {

// Z1 keeps each edge independently with probability C/lambda. In Z2 every
// vertex on either side picks C uniform neighbours with replacement.
// Z = Z1 + Z2. Requires 1 <= C <= lambda.
struct CoupledSample {
    EdgeMask z1, z2, z;
};

CoupledSample sample_coupled(const BipartiteGraph& f, int c, Seed seed);

// ceil(8 / d^b)
int default_spread_constant(double d, int b);

// 2C'/lambda with C' = C (200 / d^D)^b: the per-edge inclusion bound for Z
// under FB1 and FB2.
double per_edge_inclusion_bound(const FBParams& params, int c, int lambda);

// Frequency of an event with an exact binomial (Clopper-Pearson) 99% interval.
struct SpreadEstimate {
    std::string event;
    std::int64_t trials = 0;
    std::int64_t hits = 0;
    double estimate = 0.0;
    double lo = 0.0, hi = 1.0;
    double radius = 0.0;  // max distance from the estimate to either end of the interval

    static SpreadEstimate from_counts(std::string event, std::int64_t hits, std::int64_t trials);
    SpreadEstimate merged(const SpreadEstimate& other) const;
};

// Header event,trials,hits,estimate,radius.
void write_estimates_csv(std::ostream& out, const std::vector<SpreadEstimate>& rows);

struct SpreadMatchingResult {
    bool success = false;
    BipartiteMatching matching;  // perfect on success
    int draws = 0;               // samples of Z used
    HallResult last;             // Hall check of the final draw
};

// Draws Z until Hall's condition holds in it (at most 1 + max_resamples
// draws) and returns the canonical maximum matching of Z.
SpreadMatchingResult sample_spread_matching(const BipartiteGraph& f, int c, int max_resamples, Seed seed);

// Frequency of S within the returned matching over successful draws.
// An empty S has estimate 1; an S that is not a matching of F has estimate 0.
// Trial t runs under seed.child(t).
SpreadEstimate estimate_matching_spread(const BipartiteGraph& f, int c, const std::vector<std::pair<int, int>>& s,
                                        std::int64_t trials, Seed seed, int max_resamples = 20);

// One pass over `trials` seeds (trial t under seed.child(t), as in
// estimate_matching_spread). Counts per edge how often it lies in the first Z
// draw and how often it is matched, the latter over successful trials.
struct MatchingSweep {
    std::int64_t trials = 0;
    std::int64_t first_draw_failures = 0;  // Hall violated in the first Z
    std::int64_t successes = 0;
    std::vector<std::int64_t> in_z, matched;  // indexed by edge id
    double max_matched_frequency() const;     // over edges, conditioned on success
};

MatchingSweep sweep_spread_matching(const BipartiteGraph& f, int c, std::int64_t trials, Seed seed,
                                    int max_resamples = 20);

// Random bipartite graph with edge probability p, redrawn until FB1-FB3 hold.
// Throws GenerationFailed after max_attempts draws.
FBInstance random_fb_instance(int lambda, double p, const FBParams& params, Seed seed, int max_attempts = 100);

using SampleEvent = std::function<bool(const BipartiteGraph&, const EdgeMask&)>;

SampleEvent event_edge_absent(int edge_id);
SampleEvent event_hall_violated();

// For a decreasing event the probability under Z is at most the smaller of
// the probabilities under Z1 and Z2. All three are estimated from the same draws.
struct CouplingCheck {
    SpreadEstimate z, z1, z2;
    bool violated = false;  // P_Z exceeds min(P_Z1, P_Z2) by more than the combined radii
};

CouplingCheck verify_coupling_monotone(const BipartiteGraph& f, int c, const SampleEvent& event,
                                       std::int64_t trials, Seed seed);

}  // namespace robemb
