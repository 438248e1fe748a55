#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robemb/graph.hpp"
#include "robemb/rng.hpp"

namespace robemb {

// A pair (A,B) is (eps,d)-regular when every A' of A and B' of B with
// |A'| >= eps|A| and |B'| >= eps|B| satisfy |d(A',B') - d(A,B)| <= eps, and
// additionally d(A,B) >= d - eps.
struct RegPairParams {
    double eps = 0.1;
    double d = 0.0;
    void validate() const;
};

enum class RegularityMode {
    exact,   // enumerates every qualifying subset; both sides at most kExactRegularityLimit
    refute,  // random search for a violating pair; can only refute
};

inline constexpr int kExactRegularityLimit = 14;

struct RegularityVerdict {
    enum class Kind { certified, refuted, inconclusive };
    Kind kind = Kind::inconclusive;
    double pair_density = 0.0;
    // For a refutation: the violating subsets (both whole sides when the
    // pair density itself is below d - eps) and the density they span.
    std::vector<Vertex> sub_a, sub_b;
    double witness_density = 0.0;
    // Set when a super-regularity degree condition failed at this vertex.
    std::optional<Vertex> low_degree_vertex;
    std::string reason;

    bool refuted() const { return kind == Kind::refuted; }
    bool passed() const { return kind != Kind::refuted; }
};

std::string to_string(RegularityVerdict::Kind kind);

RegularityVerdict check_regular_pair(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                                     const RegPairParams& params, RegularityMode mode, int trials = 2000,
                                     Seed seed = {});

// Regularity plus: every a in A has at least (d - eps)|B| neighbours in B and
// every b in B at least (d - eps)|A| in A.
RegularityVerdict check_super_regular_pair(const Graph& g, const std::vector<Vertex>& a,
                                           const std::vector<Vertex>& b, const RegPairParams& params,
                                           RegularityMode mode, int trials = 2000, Seed seed = {});

// Degree and codegree spread across the pair. A quick screen only: passing it
// does not certify regularity.
struct CodegreeReport {
    double density = 0.0;
    double max_degree_deviation = 0.0;    // max over a of |deg_B(a)/|B| - d|, and symmetrically
    double max_codegree_deviation = 0.0;  // max over pairs a,a' of |codeg(a,a')/|B| - d^2|
    bool concentrated = false;            // both deviations at most eps
};

CodegreeReport codegree_screen(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                               double eps);

}  // namespace robemb
