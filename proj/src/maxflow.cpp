#include "robemb/maxflow.hpp"

#include <algorithm>
#include <queue>

namespace robemb {

MaxFlow::MaxFlow(int nodes) : out_(nodes), level_(nodes), it_(nodes) {}

void MaxFlow::add_edge(int from, int to, std::int64_t cap) {
    out_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    out_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
}

bool MaxFlow::bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int id : out_[v])
            if (arcs_[id].cap > 0 && level_[arcs_[id].to] < 0) {
                level_[arcs_[id].to] = level_[v] + 1;
                q.push(arcs_[id].to);
            }
    }
    return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t pushed) {
    if (v == t) return pushed;
    for (int& i = it_[v]; i < static_cast<int>(out_[v].size()); ++i) {
        int id = out_[v][i];
        Arc& a = arcs_[id];
        if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
        std::int64_t got = dfs(a.to, t, std::min(pushed, a.cap));
        if (got > 0) {
            a.cap -= got;
            arcs_[id ^ 1].cap += got;
            return got;
        }
    }
    return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
    std::int64_t flow = 0;
    while (bfs(source, sink)) {
        std::fill(it_.begin(), it_.end(), 0);
        while (std::int64_t f = dfs(source, sink, kInfinite)) flow += f;
    }
    return flow;
}

std::vector<char> MaxFlow::source_side(int source) const {
    std::vector<char> seen(out_.size(), 0);
    std::vector<int> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int id : out_[v])
            if (arcs_[id].cap > 0 && !seen[arcs_[id].to]) {
                seen[arcs_[id].to] = 1;
                stack.push_back(arcs_[id].to);
            }
    }
    return seen;
}

}  // namespace robemb
