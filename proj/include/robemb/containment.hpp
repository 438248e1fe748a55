#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robemb/graph.hpp"

namespace robemb {

enum class Containment { yes, no, timeout };

std::string to_string(Containment c);

struct ContainmentResult {
    Containment status = Containment::timeout;
    std::vector<Vertex> embedding;  // H vertex -> G vertex when status is yes
    std::int64_t nodes = 0;         // search nodes spent
    std::string method;             // which decision route answered
};

inline constexpr std::int64_t kDefaultSearchBudget = 10'000'000;

// Does G contain a copy of H on all of its vertices? Orders must agree.
// Cheap refutations first (edge count, maximum degree, sorted degree
// sequences), then H with maximum degree 1 via general matching, H a
// K_r-factor via exact cover, anything else via backtracking with
// common-neighbour candidate sets and forward checking.
ContainmentResult contains_spanning(const Graph& g, const Graph& h, std::int64_t budget = kDefaultSearchBudget);

}  // namespace robemb
