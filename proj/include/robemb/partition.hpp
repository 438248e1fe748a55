#pragma once

#include <iosfwd>
#include <vector>

#include "robemb/graph.hpp"

namespace robemb {

using Partition = std::vector<std::vector<Vertex>>;

// Proper colouring into exactly k classes whose sizes are floor(n/k) or
// ceil(n/k). Requires k > max degree (throws InfeasibleParameters otherwise).
// Classes are sorted internally and ordered by smallest member, empty last.
Partition equitable_coloring(const Graph& h, int k);

// Which stage produced the last colouring; for diagnostics and tests.
enum class EquitableStage { greedy, local_search, exhaustive };
Partition equitable_coloring(const Graph& h, int k, EquitableStage* used);

bool is_equitable_coloring(const Graph& h, const Partition& p, int k);

// For delta(G) >= ceil((1 - 1/r) n): vertex-disjoint r-cliques covering all
// but at most r - 1 vertices.
struct CliqueFactor {
    std::vector<std::vector<Vertex>> cliques;
    std::vector<Vertex> leftover;
};
CliqueFactor clique_factor(const Graph& g, int r);

// BFS distances from a set of sources; -1 for unreachable or beyond `limit`.
std::vector<int> bfs_distances(const Graph& h, const std::vector<Vertex>& sources, int limit = -1);

// xy is an edge iff 1 <= dist_H(x, y) <= radius.
Graph distance_power_graph(const Graph& h, int radius);

// Vertices at distance at most 2 from x, sorted.
std::vector<Vertex> closed_second_neighborhood(const Graph& h, Vertex x);

// One line per part, members separated by spaces (an empty part is an empty line).
void write_partition(std::ostream& out, const Partition& p);
Partition read_partition(std::istream& in);

}  // namespace robemb
