#pragma once

#include <vector>

#include "robemb/graph.hpp"

namespace robemb {

// Maximum matching in a general graph (Edmonds' blossom algorithm).
// mate[v] is v's partner or -1.
std::vector<Vertex> maximum_general_matching(const Graph& g);

}  // namespace robemb
