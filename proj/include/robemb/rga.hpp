#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "robemb/bipartite.hpp"
#include "robemb/host.hpp"
#include "robemb/pattern.hpp"
#include "robemb/rng.hpp"
#include "robemb/spread_matching.hpp"

namespace robemb {

struct RGAConfig {
    double mu = 0.25;     // fraction of each part kept back as buffer
    double zeta = 1.0;    // image-restriction size parameter
    double theta = -1.0;  // candidate floor fraction; negative means mu * zeta / 10
    std::vector<Vertex> order;  // embedding order of the non-buffer vertices; empty means the default
    double floor_fraction() const { return theta >= 0.0 ? theta : mu * zeta / 10.0; }
};

// floor(mu |X_i|) vertices per part, drawn uniformly from the potential buffers.
std::vector<std::vector<Vertex>> select_buffers(const PartitionedPattern& p, double mu, Seed seed);

// Round-robin over the parts, ascending inside each part, buffers skipped.
std::vector<Vertex> default_main_order(const PartitionedPattern& p, const std::vector<std::vector<Vertex>>& buffers);

struct RGAResult {
    bool success = false;
    std::vector<Vertex> phi;  // -1 for buffer vertices and anything not reached
    std::vector<std::vector<Vertex>> buffers;
    std::vector<Vertex> order;
    std::vector<int> candidate_sizes;  // per step, in embedding order
    int failed_step = -1;
};

// Embeds the non-buffer vertices one at a time, each uniformly among the
// unused vertices of its cluster (within its restriction) adjacent to the
// images of its already embedded neighbours. Fails when a candidate set is
// smaller than max(1, floor(theta |V(x)|)).
RGAResult rga_embed(const PartitionedHost& host, const PartitionedPattern& p, const RGAConfig& cfg, Seed seed);

// Buffer-completion graph of part i: buffer vertices against unused cluster
// vertices, x ~ v when v is allowed for x and adjacent to the images of all
// embedded neighbours of x.
BipartiteGraph buffer_graph(const PartitionedHost& host, const PartitionedPattern& p, const RGAResult& main,
                            int part, std::vector<Vertex>* side_a = nullptr, std::vector<Vertex>* side_b = nullptr);

struct BufferCompletion {
    bool success = false;
    std::vector<Vertex> phi;
    int failed_part = -1;
    HallResult hall;  // Hall witness of the failed part
};

// Completes each part with a spread perfect matching. C is capped at the
// part size lambda; lambda = 0 is vacuous.
BufferCompletion complete_with_buffers(const PartitionedHost& host, const PartitionedPattern& p,
                                       const RGAResult& main, int c, Seed seed, int max_resamples = 20);

struct PipelineTrial {
    bool success = false;
    std::string failed_stage;  // "rga" or "buffer"
    int failed_step = -1;
    int failed_part = -1;
    std::vector<Vertex> phi;
};

PipelineTrial run_pipeline_trial(const PartitionedHost& host, const PartitionedPattern& p, const RGAConfig& cfg,
                                 int c, Seed seed, int max_resamples = 20);

struct TrialOutcome {
    std::int64_t trial = 0;
    bool success = false;
    std::string failed_stage;
    int failed_step = -1, failed_part = -1;
};

struct PipelineStats {
    std::vector<TrialOutcome> outcomes;  // one per attempt
    std::int64_t attempts = 0;
    std::int64_t successes = 0;
    std::vector<SpreadEstimate> vertex_probes;  // P(phi(x) = v)
    std::vector<SpreadEstimate> edge_events;    // P(S within phi(E(H)))
    double n_times_max_probe = 0.0;
};

// Runs trials (trial t under seed.child(t)) until `successes` of them succeed,
// conditioning every estimate on success. Needs successes >= 1000; throws
// EstimateUnreliable if the success rate drops below 10%.
PipelineStats sample_pipeline(const PartitionedHost& host, const PartitionedPattern& p, const RGAConfig& cfg, int c,
                              const std::vector<std::pair<Vertex, Vertex>>& probes,
                              const std::vector<std::vector<Edge>>& edge_sets, std::int64_t successes, Seed seed,
                              int max_resamples = 20);

// Columns: trial,success,failed_stage,failed_step,failed_part
void write_trial_outcomes_csv(std::ostream& out, const std::vector<TrialOutcome>& rows);

PipelineStats estimate_vertex_spread(const PartitionedHost& host, const PartitionedPattern& p, const RGAConfig& cfg,
                                     int c, const std::vector<std::pair<Vertex, Vertex>>& probes,
                                     std::int64_t successes, Seed seed);

// Pushforward to edge sets: P(S within phi(E(H))) for each S.
std::vector<SpreadEstimate> pushforward_edge_spread(const PartitionedHost& host, const PartitionedPattern& p,
                                                    const RGAConfig& cfg, int c,
                                                    const std::vector<std::vector<Edge>>& edge_sets,
                                                    std::int64_t successes, Seed seed);

}  // namespace robemb
