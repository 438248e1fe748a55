#pragma once

#include <vector>

#include "robemb/graph.hpp"
#include "robemb/rng.hpp"

namespace robemb {

struct HostParams {
    double eps = 0.0;
    double d = 0.0;
    double kappa = 1.0;  // largest over smallest cluster size
    int r1 = 0;          // number of clusters
};

// Host graph G with clusters V_i indexed by the vertices of the reduced graph
// R. Pairs along R are (eps,d)-regular, pairs along R' (a spanning subgraph
// of R) are (eps,d)-super-regular.
struct PartitionedHost {
    Graph g;
    std::vector<std::vector<Vertex>> clusters;
    std::vector<int> cluster_of;
    Graph r, rprime;
    HostParams params;
};

// Clusters of m vertices each (cluster i is [i m, (i+1) m)). A pair along R'
// gets each cross edge with probability 2d, other pairs along R with
// probability d. Each attempt is checked (minimum degree and a regularity
// refuter at eps = 4/sqrt(m)); up to `max_attempts` attempts, then
// GenerationFailed. Requires m >= 20 and 0 < d <= 1/2.
PartitionedHost generate_regular_host(const Graph& r, const Graph& rprime, int m, double d, Seed seed,
                                      int max_attempts = 10);

// Blow-up R*: cluster sizes from `host`, complete bipartite along R, no
// other edges. Vertex ids coincide with those of host.g.
Graph reduced_blow_up(const PartitionedHost& host);

}  // namespace robemb
