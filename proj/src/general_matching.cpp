#include "robemb/general_matching.hpp"

#include <algorithm>
#include <queue>

namespace robemb {

namespace {

class Blossom {
public:
    explicit Blossom(const Graph& g) : g_(g), n_(g.order()), mate_(n_, -1), parent_(n_), base_(n_), used_(n_), in_blossom_(n_) {}

    std::vector<Vertex> run() {
        for (Vertex v = 0; v < n_; ++v)
            if (mate_[v] < 0)
                for (Vertex w : g_.neighbors(v))
                    if (mate_[w] < 0) {
                        mate_[v] = w;
                        mate_[w] = v;
                        break;
                    }
        for (Vertex v = 0; v < n_; ++v) {
            if (mate_[v] >= 0) continue;
            Vertex u = find_path(v);
            while (u >= 0) {
                Vertex pv = parent_[u], ppv = mate_[pv];
                mate_[u] = pv;
                mate_[pv] = u;
                u = ppv;
            }
        }
        return mate_;
    }

private:
    Vertex lca(Vertex a, Vertex b) {
        std::vector<char> seen(n_, 0);
        while (true) {
            a = base_[a];
            seen[a] = 1;
            if (mate_[a] < 0) break;
            a = parent_[mate_[a]];
        }
        while (true) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[mate_[b]];
        }
    }

    void mark_path(Vertex v, Vertex b, Vertex child) {
        while (base_[v] != b) {
            in_blossom_[base_[v]] = in_blossom_[base_[mate_[v]]] = 1;
            parent_[v] = child;
            child = mate_[v];
            v = parent_[mate_[v]];
        }
    }

    Vertex find_path(Vertex root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), -1);
        for (Vertex i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = 1;
        std::queue<Vertex> q;
        q.push(root);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            for (Vertex to : g_.neighbors(v)) {
                if (base_[v] == base_[to] || mate_[v] == to) continue;
                if (to == root || (mate_[to] >= 0 && parent_[mate_[to]] >= 0)) {
                    Vertex cur = lca(v, to);
                    std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (Vertex i = 0; i < n_; ++i)
                        if (in_blossom_[base_[i]]) {
                            base_[i] = cur;
                            if (!used_[i]) {
                                used_[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent_[to] < 0) {
                    parent_[to] = v;
                    if (mate_[to] < 0) return to;
                    used_[mate_[to]] = 1;
                    q.push(mate_[to]);
                }
            }
        }
        return -1;
    }

    const Graph& g_;
    int n_;
    std::vector<Vertex> mate_, parent_, base_;
    std::vector<char> used_, in_blossom_;
};

}  // namespace

std::vector<Vertex> maximum_general_matching(const Graph& g) { return Blossom(g).run(); }

}  // namespace robemb
