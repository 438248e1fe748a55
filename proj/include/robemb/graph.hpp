#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "robemb/bitset.hpp"

namespace robemb {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // stored with first < second

// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    // Rejects loops, repeated edges and out-of-range endpoints.
    Graph(int n, const std::vector<Edge>& edges);

    int order() const { return static_cast<int>(adj_.size()); }
    std::size_t size() const { return edge_count_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    const Bitset& row(Vertex v) const { return rows_[v]; }
    bool adjacent(Vertex u, Vertex v) const { return rows_[u].test(v); }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;
    int min_degree() const;
    // Sorted lexicographically.
    std::vector<Edge> edges() const;

    // Subgraph induced on `vs`; vertex vs[i] becomes i.
    Graph induced(const std::vector<Vertex>& vs) const;
    Graph complement() const;
    std::vector<std::vector<Vertex>> components() const;
    bool connected() const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Bitset> rows_;
    std::size_t edge_count_ = 0;
};

// Accumulates edges, ignoring repeats.
class GraphBuilder {
public:
    explicit GraphBuilder(int n);
    // Returns false if the edge was already present.
    bool add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const { return rows_[u].test(v); }
    Graph build() const;

private:
    int n_;
    std::vector<Bitset> rows_;
    std::vector<Edge> edges_;
};

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
// Disjoint union; vertices of b are shifted by a.order().
Graph disjoint_union(const Graph& a, const Graph& b);

// Text format: a line "n <count>", then one "u v" line per edge.
// Blank lines and lines starting with '#' are ignored.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

std::string edge_str(const Edge& e);

}  // namespace robemb
