#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "robemb/rng.hpp"

namespace robemb {

// Balanced bipartite graph with sides A and B, both indexed 0..lambda-1.
// Edges are numbered in sorted (a, b) order; edge masks index that numbering.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(int lambda, std::vector<std::pair<int, int>> edges);

    int lambda() const { return lambda_; }
    std::size_t size() const { return edges_.size(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    // Edge ids at a vertex, in increasing order of the other endpoint.
    const std::vector<int>& edges_at_a(int a) const { return at_a_[a]; }
    const std::vector<int>& edges_at_b(int b) const { return at_b_[b]; }
    int degree_a(int a) const { return static_cast<int>(at_a_[a].size()); }
    int degree_b(int b) const { return static_cast<int>(at_b_[b].size()); }
    int edge_id(int a, int b) const;  // -1 when absent

private:
    int lambda_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> at_a_, at_b_;
};

using EdgeMask = std::vector<char>;

// "bipartite <lambda>" then "a b" lines with a in [0, lambda) and b in
// [lambda, 2 lambda).
BipartiteGraph read_bipartite(std::istream& in);
void write_bipartite(std::ostream& out, const BipartiteGraph& f);

struct BipartiteMatching {
    std::vector<int> mate_a, mate_b;  // -1 when unmatched
    int size = 0;
};

// Hopcroft-Karp restricted to the edges selected by `mask` (all edges when
// null). Vertices and neighbours are scanned in index order, so the result is
// a fixed function of the input.
BipartiteMatching maximum_matching(const BipartiteGraph& f, const EdgeMask* mask = nullptr);

struct HallResult {
    bool satisfied = false;
    BipartiteMatching matching;
    // When violated: S within A with |N(S)| = |S| - 1, grown by alternating
    // paths from the lowest unmatched vertex of A.
    std::vector<int> witness;
    std::vector<int> witness_neighbors;
};

HallResult hall_check(const BipartiteGraph& f, const EdgeMask* mask = nullptr);

// Parameters of a buffer-completion instance.
struct FBParams {
    double d = 0.8;       // density of the host pairs
    int b = 1;            // number of embedded neighbours constraining a buffer vertex
    double rho = 0.0;     // image-restriction parameter
    double mu = 0.25;     // buffer fraction
    int max_degree = 1;   // maximum degree of the pattern
    void validate() const;
};

struct FBInstance {
    BipartiteGraph graph;
    FBParams params;
};

// FB1: every a has degree >= d^b lambda / 2.
// FB2: every b has degree >= (d^D / 100)^b lambda.
// FB3: for every W in B with |W| >= (rho/mu) lambda, at most (rho/mu) lambda
//      vertices of A have fewer than d^b |W| / 2 neighbours in W.
// FB3 is exact for lambda <= 14 and checked on `samples` random W otherwise.
struct FBReport {
    bool fb1 = true, fb2 = true, fb3 = true;
    bool fb3_exact = false;
    int fb1_violations = 0, fb2_violations = 0;
    std::vector<int> fb3_witness;  // a violating W
    bool ok() const { return fb1 && fb2 && fb3; }
};

FBReport check_fb_conditions(const FBInstance& inst, Seed seed = {}, int samples = 1000);

}  // namespace robemb
