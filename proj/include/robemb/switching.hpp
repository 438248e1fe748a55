#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "robemb/graph.hpp"
#include "robemb/rational.hpp"
#include "robemb/rng.hpp"

namespace robemb {

// An injective map from a vertex subset S of H into G that embeds H[S].
// Checked on construction.
class PartialEmbedding {
public:
    PartialEmbedding() = default;
    PartialEmbedding(const Graph& h, const Graph& g, std::vector<std::pair<Vertex, Vertex>> pairs);

    const std::vector<std::pair<Vertex, Vertex>>& pairs() const { return pairs_; }  // sorted by x
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

private:
    std::vector<std::pair<Vertex, Vertex>> pairs_;
};

// "x v" lines, '#' comments.
PartialEmbedding read_partial_embedding(std::istream& in, const Graph& h, const Graph& g);

struct SwitchStep {
    int time = 0;
    Vertex x = -1, y = -1;  // the images of x and y were exchanged
    Edge repaired{-1, -1};  // the unmapped edge (x, x*) that triggered the swap
    std::size_t mapped_before = 0, mapped_after = 0;
};

struct SwitchResult {
    enum class Status { success, stuck };
    Status status = Status::stuck;
    std::vector<Vertex> phi;  // bijection V(H) -> V(G); an embedding on success
    std::vector<SwitchStep> trace;
    bool ok() const { return status == Status::success; }
};

// Starts from a uniformly random bijection extending phi_s and repairs
// unmapped edges one swap at a time. A swap exchanges phi(x) and phi(y) for
// some y whose new image keeps every mapped edge at y, so the number of
// mapped edges strictly increases and at most e(H) swaps happen. Images of S
// never move. Reports `stuck` if some unmapped edge admits no such y.
SwitchResult switching_embed(const Graph& g, const Graph& h, const PartialEmbedding& phi_s, Seed seed);

std::size_t mapped_edge_count(const Graph& g, const Graph& h, const std::vector<Vertex>& phi);
bool is_embedding(const Graph& g, const Graph& h, const std::vector<Vertex>& phi);

// (2D - 1) / 2D: the minimum-degree fraction under which every H with
// maximum degree D embeds, with partial embeddings of size up to gamma D n.
Rational delta_e_upper_bound(int max_degree);

// delta(G) >= ((2D - 1)/2D + gamma) n, gamma in (0, 1/2D) and |S| <= gamma D n.
bool switching_hypothesis_holds(const Graph& g, int max_degree, double gamma, std::size_t s_size);

// One "x v" line per vertex of H.
void write_embedding(std::ostream& out, const std::vector<Vertex>& phi);
// CSV with header step,x,y,repaired_x,repaired_xstar,mapped_before,mapped_after.
void write_trace_csv(std::ostream& out, const std::vector<SwitchStep>& trace);

}  // namespace robemb
