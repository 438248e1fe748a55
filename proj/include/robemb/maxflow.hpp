#pragma once

#include <cstdint>
#include <vector>

namespace robemb {

// Dinic's algorithm on integer capacities.
class MaxFlow {
public:
    static constexpr std::int64_t kInfinite = INT64_MAX / 4;

    explicit MaxFlow(int nodes);
    void add_edge(int from, int to, std::int64_t cap);
    std::int64_t run(int source, int sink);
    // After run(): nodes reachable from the source in the residual graph.
    std::vector<char> source_side(int source) const;

private:
    struct Arc {
        int to;
        std::int64_t cap;
    };
    bool bfs(int s, int t);
    std::int64_t dfs(int v, int t, std::int64_t pushed);

    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_;
    std::vector<int> level_, it_;
};

}  // namespace robemb
