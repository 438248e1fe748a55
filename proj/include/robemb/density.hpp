#pragma once

#include <vector>

#include "robemb/graph.hpp"
#include "robemb/rational.hpp"

namespace robemb {

// |E(A,B)| / (|A||B|) for disjoint non-empty vertex sets.
Rational density(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b);

// e(H) / (v(H) - 1), defined for v(H) >= 2.
Rational one_density(const Graph& h);

struct OneDensity {
    Rational value;
    std::vector<Vertex> witness;  // sorted vertex set of a connected subgraph attaining value
};

// Maximum one_density over subgraphs with at least two vertices.
// Components of up to kEnumerationLimit vertices are enumerated exhaustively,
// larger ones go through a parametric min-cut search.
OneDensity max_one_density(const Graph& h);

inline constexpr int kEnumerationLimit = 20;

// The two strategies, exposed so they can be cross-checked.
OneDensity max_one_density_enumerate(const Graph& h);  // components up to 26 vertices
OneDensity max_one_density_flow(const Graph& h);

}  // namespace robemb
