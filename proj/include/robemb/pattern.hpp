#pragma once

#include <string>
#include <vector>

#include "robemb/graph.hpp"
#include "robemb/host.hpp"
#include "robemb/rng.hpp"

namespace robemb {

// Pattern H split into parts X_i matching the host clusters V_i, with a set
// of potential buffer vertices inside each part.
struct PartitionedPattern {
    Graph h;
    std::vector<std::vector<Vertex>> parts;    // X_i, sorted
    std::vector<std::vector<Vertex>> buffers;  // potential buffer vertices of X_i, sorted
    std::vector<int> part_of;
    // Allowed images per pattern vertex; an empty list allows the whole cluster.
    std::vector<std::vector<Vertex>> restrictions;
    double alpha = 0.0;
    int max_degree = 0;
};

struct PartitionOptions {
    // Classes for the distance-5 colouring that picks buffer candidates.
    // 0 means one more than the maximum degree of that power graph.
    int buffer_classes = 0;
    // Extra attempts (fresh seeds) for the switching step before giving up.
    int switching_restarts = 20;
};

// Three steps:
//  I.  colour the distance-5 power graph on vertices far (> 3) from X*
//      equitably and take ceil(alpha |V_i|) buffer vertices per cluster from
//      one colour class;
//  II. for a buffer vertex x of part i, colour H[N^2[x]] equitably with one
//      class per node of the R' clique containing i, send the class of x to
//      i and the other classes to the other clique nodes in ascending order;
//  III. complete the map into the blow-up R* with the switching embedder,
//      keeping X* and the Step II placements fixed.
// Throws PartitionFailed when a step cannot be carried out at this size.
PartitionedPattern partition_pattern(const Graph& h, const PartitionedHost& host,
                                     const std::vector<std::vector<Vertex>>& xstar, double alpha, Seed seed,
                                     const PartitionOptions& opts = {});

struct PatternCheck {
    bool size_compatible = true;  // |X_i| = |V_i|
    bool r_partition = true;      // parts independent, edges only along R
    bool buffer_condition = true;  // buffer neighbourhoods up to distance 2 run along R'
    bool prescribed = true;       // X*_i within X_i and disjoint from the buffers
    std::string detail;
    bool ok() const { return size_compatible && r_partition && buffer_condition && prescribed; }
};

PatternCheck check_partitioned_pattern(const PartitionedPattern& p, const PartitionedHost& host,
                                       const std::vector<std::vector<Vertex>>& xstar = {});

}  // namespace robemb
