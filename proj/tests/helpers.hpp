#pragma once

#include <algorithm>
#include <vector>

#include "robemb/graph.hpp"
#include "robemb/rng.hpp"

namespace testutil {

using robemb::Edge;
using robemb::Graph;
using robemb::Vertex;

inline Graph random_graph(int n, double p, robemb::Seed seed) {
    robemb::Rng rng(seed);
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) e.emplace_back(u, v);
    return Graph(n, e);
}

// Random graph with maximum degree at most `delta`: edges proposed in random
// order, kept while both endpoints have room.
inline Graph random_bounded_degree(int n, int delta, double p, robemb::Seed seed) {
    robemb::Rng rng(seed);
    std::vector<Edge> all;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
    rng.shuffle(all);
    std::vector<int> deg(n, 0);
    std::vector<Edge> e;
    for (auto [u, v] : all)
        if (deg[u] < delta && deg[v] < delta && rng.bernoulli(p)) {
            ++deg[u];
            ++deg[v];
            e.emplace_back(u, v);
        }
    return Graph(n, e);
}

inline Graph complete_bipartite(int a, int b) {
    std::vector<Edge> e;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) e.emplace_back(u, a + v);
    return Graph(a + b, e);
}

inline Graph petersen() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        int a = i, b = (i + 1) % 5;
        e.emplace_back(std::min(a, b), std::max(a, b));
        e.emplace_back(i, i + 5);
        int c = 5 + i, d = 5 + (i + 2) % 5;
        e.emplace_back(std::min(c, d), std::max(c, d));
    }
    return Graph(10, e);
}

inline std::vector<Vertex> range(int from, int to) {
    std::vector<Vertex> v;
    for (int i = from; i < to; ++i) v.push_back(i);
    return v;
}

}  // namespace testutil
