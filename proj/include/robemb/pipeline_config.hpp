#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "robemb/host.hpp"
#include "robemb/pattern.hpp"
#include "robemb/rga.hpp"

namespace robemb {

// Flat "key = value" file; '#' starts a comment. Unknown keys are rejected.
// A zero for eps, theta, C or alpha selects the derived default.
struct PipelineConfig {
    int delta = 2;          // R' is a K_{delta+1}-factor of R = K_r
    double gamma = 0.05;
    double d = 0.5;
    double eps = 0.0;       // 0: 4/sqrt(m)
    int m = 60;             // cluster size
    int r = 3;              // clusters
    double mu = 0.25;
    double zeta = 1.0;
    double theta = 0.0;     // 0: mu * zeta / 10
    int C = 0;              // 0: ceil(8 / d^b)
    std::int64_t trials = 1000;
    std::uint64_t seed = 1;
    std::string pattern = "clique-factor";  // or "matching"
    double alpha = 0.0;     // 0: mu
    int probes = 50;
    int max_resamples = 20;
};

PipelineConfig parse_pipeline_config(std::istream& in);
PipelineConfig read_pipeline_config_file(const std::string& path);

struct PipelineSetup {
    PartitionedHost host;
    PartitionedPattern pattern;
    RGAConfig rga;
    int C = 1;
};

// Builds R = K_r, R' = K_{delta+1}-factor, the host and the partitioned pattern.
PipelineSetup build_pipeline(const PipelineConfig& cfg);

// Disjoint copies of K_{s} covering n vertices; n must be a multiple of s.
Graph clique_factor_pattern(int n, int s);
Graph perfect_matching_pattern(int n);

}  // namespace robemb
