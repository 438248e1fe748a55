#include "robemb/bipartite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "robemb/bitset.hpp"

namespace robemb {

BipartiteGraph::BipartiteGraph(int lambda, std::vector<std::pair<int, int>> edges)
    : lambda_(lambda), edges_(std::move(edges)), at_a_(lambda), at_b_(lambda) {
    if (lambda < 0) throw std::invalid_argument("bipartite graph: negative side size");
    for (auto [a, b] : edges_)
        if (a < 0 || a >= lambda || b < 0 || b >= lambda)
            throw std::invalid_argument("bipartite graph: endpoint out of range");
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("bipartite graph: repeated edge");
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
        at_a_[edges_[id].first].push_back(id);
        at_b_[edges_[id].second].push_back(id);
    }
    for (auto& v : at_b_)
        std::sort(v.begin(), v.end(), [this](int x, int y) { return edges_[x].first < edges_[y].first; });
}

int BipartiteGraph::edge_id(int a, int b) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(a, b));
    if (it == edges_.end() || *it != std::make_pair(a, b)) return -1;
    return static_cast<int>(it - edges_.begin());
}

BipartiteGraph read_bipartite(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long lambda = -1;
    std::vector<std::pair<int, int>> es;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("bipartite line " + std::to_string(lineno) + ": " + why);
        };
        std::string extra;
        if (lambda < 0) {
            std::string tag;
            if (!(ls >> tag >> lambda) || tag != "bipartite" || lambda < 0 || (ls >> extra))
                fail("expected 'bipartite <lambda>'");
            continue;
        }
        long long a, b;
        if (!(ls >> a >> b) || (ls >> extra)) fail("expected 'a b'");
        if (a < 0 || a >= lambda || b < lambda || b >= 2 * lambda) fail("endpoint on the wrong side");
        es.emplace_back(static_cast<int>(a), static_cast<int>(b - lambda));
    }
    if (lambda < 0) throw std::invalid_argument("bipartite: missing header");
    return BipartiteGraph(static_cast<int>(lambda), std::move(es));
}

void write_bipartite(std::ostream& out, const BipartiteGraph& f) {
    out << "bipartite " << f.lambda() << "\n";
    for (auto [a, b] : f.edges()) out << a << " " << b + f.lambda() << "\n";
}

namespace {

class HopcroftKarp {
public:
    HopcroftKarp(const BipartiteGraph& f, const EdgeMask* mask) : f_(f), mask_(mask), n_(f.lambda()) {
        m_.mate_a.assign(n_, -1);
        m_.mate_b.assign(n_, -1);
        dist_.assign(n_, 0);
    }

    BipartiteMatching run() {
        while (bfs())
            for (int a = 0; a < n_; ++a)
                if (m_.mate_a[a] < 0 && dfs(a)) ++m_.size;
        return m_;
    }

private:
    bool live(int id) const { return !mask_ || (*mask_)[id]; }

    bool bfs() {
        std::queue<int> q;
        bool found = false;
        for (int a = 0; a < n_; ++a) {
            if (m_.mate_a[a] < 0) {
                dist_[a] = 0;
                q.push(a);
            } else {
                dist_[a] = -1;
            }
        }
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            for (int id : f_.edges_at_a(a)) {
                if (!live(id)) continue;
                int b = f_.edges()[id].second;
                int next = m_.mate_b[b];
                if (next < 0) {
                    found = true;
                } else if (dist_[next] < 0) {
                    dist_[next] = dist_[a] + 1;
                    q.push(next);
                }
            }
        }
        return found;
    }

    bool dfs(int a) {
        for (int id : f_.edges_at_a(a)) {
            if (!live(id)) continue;
            int b = f_.edges()[id].second;
            int next = m_.mate_b[b];
            if (next < 0 || (dist_[next] == dist_[a] + 1 && dfs(next))) {
                m_.mate_a[a] = b;
                m_.mate_b[b] = a;
                return true;
            }
        }
        dist_[a] = -1;
        return false;
    }

    const BipartiteGraph& f_;
    const EdgeMask* mask_;
    int n_;
    BipartiteMatching m_;
    std::vector<int> dist_;
};

}  // namespace

BipartiteMatching maximum_matching(const BipartiteGraph& f, const EdgeMask* mask) {
    if (mask && mask->size() != f.size()) throw std::invalid_argument("matching: edge mask has the wrong length");
    return HopcroftKarp(f, mask).run();
}

HallResult hall_check(const BipartiteGraph& f, const EdgeMask* mask) {
    HallResult res;
    res.matching = maximum_matching(f, mask);
    res.satisfied = res.matching.size == f.lambda();
    if (res.satisfied) return res;
    const int n = f.lambda();
    int start = 0;
    while (res.matching.mate_a[start] >= 0) ++start;
    std::vector<char> seen_a(n, 0), seen_b(n, 0);
    std::vector<int> stack{start};
    seen_a[start] = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int id : f.edges_at_a(a)) {
            if (mask && !(*mask)[id]) continue;
            int b = f.edges()[id].second;
            if (seen_b[b]) continue;
            seen_b[b] = 1;
            int next = res.matching.mate_b[b];
            if (next >= 0 && !seen_a[next]) {
                seen_a[next] = 1;
                stack.push_back(next);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (seen_a[i]) res.witness.push_back(i);
        if (seen_b[i]) res.witness_neighbors.push_back(i);
    }
    return res;
}

void FBParams::validate() const {
    if (!(d > 0.0 && d <= 1.0)) throw std::invalid_argument("FB params: d must lie in (0,1]");
    if (b < 1) throw std::invalid_argument("FB params: b must be positive");
    if (max_degree < b) throw std::invalid_argument("FB params: b cannot exceed the maximum degree");
    if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("FB params: mu must lie in (0,1]");
    if (!(rho >= 0.0)) throw std::invalid_argument("FB params: rho must be non-negative");
}

FBReport check_fb_conditions(const FBInstance& inst, Seed seed, int samples) {
    inst.params.validate();
    const auto& f = inst.graph;
    const int n = f.lambda();
    const auto& p = inst.params;
    const double db = std::pow(p.d, p.b);
    FBReport rep;
    for (int a = 0; a < n; ++a)
        if (f.degree_a(a) < 0.5 * db * n - 1e-9) ++rep.fb1_violations;
    const double fb2_need = std::pow(std::pow(p.d, p.max_degree) / 100.0, p.b) * n;
    for (int b = 0; b < n; ++b)
        if (f.degree_b(b) < fb2_need - 1e-9) ++rep.fb2_violations;
    rep.fb1 = rep.fb1_violations == 0;
    rep.fb2 = rep.fb2_violations == 0;
    if (n == 0) {
        rep.fb3_exact = true;
        return rep;
    }

    const double ratio = p.rho / p.mu;
    const int min_w = std::max(1, static_cast<int>(std::ceil(ratio * n - 1e-9)));
    const double allowed = ratio * n + 1e-9;
    std::vector<Bitset> nbr(n, Bitset(n));
    for (auto [a, b] : f.edges()) nbr[a].set(b);
    auto violates = [&](const Bitset& w, int wsize) {
        int low = 0;
        for (int a = 0; a < n; ++a)
            if (nbr[a].count_and(w) < 0.5 * db * wsize - 1e-9) ++low;
        return low > allowed;
    };
    auto record = [&](const Bitset& w) {
        rep.fb3 = false;
        w.for_each([&](int b) { rep.fb3_witness.push_back(b); });
    };
    if (min_w > n) {
        rep.fb3_exact = true;
        return rep;
    }
    if (n <= 14) {
        rep.fb3_exact = true;
        for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
            int size = std::popcount(mask);
            if (size < min_w) continue;
            Bitset w(n);
            for (int b = 0; b < n; ++b)
                if (mask & (1U << b)) w.set(b);
            if (violates(w, size)) {
                record(w);
                return rep;
            }
        }
        return rep;
    }
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        int size = min_w + rng.index(static_cast<std::size_t>(n - min_w + 1));
        Bitset w(n);
        for (int b : rng.sample(n, size)) w.set(b);
        if (violates(w, size)) {
            record(w);
            return rep;
        }
    }
    return rep;
}

}  // namespace robemb
