#include "robemb/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace robemb {

namespace {

void check_endpoints(int n, Vertex u, Vertex v) {
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("edge " + std::to_string(u) + " " + std::to_string(v) +
                                    " out of range for n=" + std::to_string(n));
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
}

}  // namespace

Graph::Graph(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    adj_.assign(n, {});
    rows_.assign(n, Bitset(n));
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    for (auto [u, v] : edges) {
        check_endpoints(n, u, v);
        if (rows_[u].test(v))
            throw std::invalid_argument("repeated edge " + std::to_string(u) + " " + std::to_string(v));
        rows_[u].set(v);
        rows_[v].set(u);
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    edge_count_ = edges.size();
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

int Graph::min_degree() const {
    if (adj_.empty()) return 0;
    int d = order();
    for (const auto& a : adj_) d = std::min(d, static_cast<int>(a.size()));
    return d;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < order(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::induced(const std::vector<Vertex>& vs) const {
    std::vector<int> pos(order(), -1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] < 0 || vs[i] >= order()) throw std::invalid_argument("induced: vertex out of range");
        if (pos[vs[i]] != -1) throw std::invalid_argument("induced: repeated vertex");
        pos[vs[i]] = static_cast<int>(i);
    }
    std::vector<Edge> es;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (Vertex w : adj_[vs[i]])
            if (pos[w] > static_cast<int>(i)) es.emplace_back(static_cast<int>(i), pos[w]);
    return Graph(static_cast<int>(vs.size()), es);
}

Graph Graph::complement() const {
    std::vector<Edge> es;
    for (Vertex u = 0; u < order(); ++u)
        for (Vertex v = u + 1; v < order(); ++v)
            if (!adjacent(u, v)) es.emplace_back(u, v);
    return Graph(order(), es);
}

std::vector<std::vector<Vertex>> Graph::components() const {
    std::vector<std::vector<Vertex>> comps;
    std::vector<char> seen(order(), 0);
    for (Vertex s = 0; s < order(); ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex w : adj_[comp[i]])
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool Graph::connected() const { return components().size() <= 1; }

GraphBuilder::GraphBuilder(int n) : n_(n), rows_(n, Bitset(n)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
}

bool GraphBuilder::add_edge(Vertex u, Vertex v) {
    check_endpoints(n_, u, v);
    if (rows_[u].test(v)) return false;
    rows_[u].set(v);
    rows_[v].set(u);
    edges_.emplace_back(std::min(u, v), std::max(u, v));
    return true;
}

Graph GraphBuilder::build() const { return Graph(n_, edges_); }

Graph complete_graph(int n) {
    GraphBuilder b(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) b.add_edge(u, v);
    return b.build();
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    GraphBuilder b(n);
    for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
    return b.build();
}

Graph path_graph(int n) {
    GraphBuilder b(n);
    for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
    return b.build();
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> es = a.edges();
    for (auto [u, v] : b.edges()) es.emplace_back(u + a.order(), v + a.order());
    return Graph(a.order() + b.order(), es);
}

Graph read_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Edge> es;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("graph line " + std::to_string(lineno) + ": " + why);
        };
        if (n < 0) {
            std::string tag;
            if (!(ls >> tag >> n) || tag != "n" || n < 0) fail("expected 'n <count>'");
        } else {
            long long u, v;
            if (!(ls >> u >> v)) fail("expected 'u v'");
            if (u < 0 || v < 0 || u >= n || v >= n) fail("endpoint out of range");
            es.emplace_back(static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v)));
        }
        std::string extra;
        if (ls >> extra && extra[0] != '#') fail("trailing token '" + extra + "'");
    }
    if (n < 0) throw std::invalid_argument("graph: missing 'n <count>' header");
    return Graph(n, es);
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "n " << g.order() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

std::string edge_str(const Edge& e) { return std::to_string(e.first) + "-" + std::to_string(e.second); }

}  // namespace robemb
