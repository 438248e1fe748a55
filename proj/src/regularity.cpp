#include "robemb/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "robemb/error.hpp"

namespace robemb {

namespace {

constexpr double kTol = 1e-9;

void validate_pair(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("regularity: empty side");
    std::vector<char> mark(g.order(), 0);
    for (const auto* side : {&a, &b})
        for (Vertex v : *side) {
            if (v < 0 || v >= g.order()) throw std::invalid_argument("regularity: vertex out of range");
            if (mark[v]) throw std::invalid_argument("regularity: sides overlap or repeat a vertex");
            mark[v] = 1;
        }
}

Bitset as_bitset(int n, const std::vector<Vertex>& s) {
    Bitset bs(n);
    for (Vertex v : s) bs.set(v);
    return bs;
}

int min_subset(double eps, std::size_t size) {
    return std::max(1, static_cast<int>(std::ceil(eps * static_cast<double>(size) - kTol)));
}

double pair_density(const Graph& g, const std::vector<Vertex>& a, const Bitset& bmask, std::size_t bsize) {
    long long e = 0;
    for (Vertex v : a) e += g.row(v).count_and(bmask);
    return static_cast<double>(e) / (static_cast<double>(a.size()) * static_cast<double>(bsize));
}

struct Violation {
    std::vector<Vertex> xs, ys;
    double density;
};

// Given a fixed X' of X, the subsets Y' of each size k that maximise and
// minimise e(X',Y') are the k vertices of largest and smallest degree into X'.
// This settles every Y' for X' at once.
std::optional<Violation> scan_fixed_side(const Graph& g, const std::vector<Vertex>& xs_sub,
                                         const std::vector<Vertex>& ys, int min_y, double base, double eps) {
    Bitset xmask = as_bitset(g.order(), xs_sub);
    std::vector<std::pair<int, Vertex>> deg;
    deg.reserve(ys.size());
    for (Vertex y : ys) deg.emplace_back(g.row(y).count_and(xmask), y);
    std::sort(deg.begin(), deg.end(), [](const auto& l, const auto& r) {
        return l.first != r.first ? l.first > r.first : l.second < r.second;
    });
    const int ny = static_cast<int>(ys.size());
    std::vector<long long> prefix(ny + 1, 0);
    for (int i = 0; i < ny; ++i) prefix[i + 1] = prefix[i] + deg[i].first;
    const double xa = static_cast<double>(xs_sub.size());
    for (int k = min_y; k <= ny; ++k) {
        double hi = static_cast<double>(prefix[k]) / (xa * k);
        double lo = static_cast<double>(prefix[ny] - prefix[ny - k]) / (xa * k);
        if (hi - base > eps + kTol) {
            Violation v{xs_sub, {}, hi};
            for (int i = 0; i < k; ++i) v.ys.push_back(deg[i].second);
            return v;
        }
        if (base - lo > eps + kTol) {
            Violation v{xs_sub, {}, lo};
            for (int i = ny - k; i < ny; ++i) v.ys.push_back(deg[i].second);
            return v;
        }
    }
    return std::nullopt;
}

RegularityVerdict refuted(double base, std::vector<Vertex> sa, std::vector<Vertex> sb, double dens,
                          std::string reason) {
    RegularityVerdict v;
    v.kind = RegularityVerdict::Kind::refuted;
    v.pair_density = base;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    v.sub_a = std::move(sa);
    v.sub_b = std::move(sb);
    v.witness_density = dens;
    v.reason = std::move(reason);
    return v;
}

}  // namespace

void RegPairParams::validate() const {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("regularity: eps must lie in (0,1]");
    if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("regularity: d must lie in [0,1]");
}

std::string to_string(RegularityVerdict::Kind kind) {
    switch (kind) {
        case RegularityVerdict::Kind::certified: return "certified";
        case RegularityVerdict::Kind::refuted: return "refuted";
        case RegularityVerdict::Kind::inconclusive: return "inconclusive";
    }
    return "?";
}

RegularityVerdict check_regular_pair(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                                     const RegPairParams& params, RegularityMode mode, int trials, Seed seed) {
    params.validate();
    validate_pair(g, a, b);
    const double eps = params.eps;
    const double base = pair_density(g, a, as_bitset(g.order(), b), b.size());
    if (base < params.d - eps - kTol) return refuted(base, a, b, base, "pair density below d - eps");

    const int min_a = min_subset(eps, a.size());
    const int min_b = min_subset(eps, b.size());

    if (mode == RegularityMode::exact) {
        if (static_cast<int>(a.size()) > kExactRegularityLimit || static_cast<int>(b.size()) > kExactRegularityLimit)
            throw UnsupportedSize("exact regularity check limited to sides of at most 14 vertices");
        const std::uint32_t total = 1U << a.size();
        std::vector<Vertex> sub;
        for (std::uint32_t mask = 1; mask < total; ++mask) {
            if (std::popcount(mask) < min_a) continue;
            sub.clear();
            for (std::size_t i = 0; i < a.size(); ++i)
                if (mask & (1U << i)) sub.push_back(a[i]);
            if (auto v = scan_fixed_side(g, sub, b, min_b, base, eps))
                return refuted(base, v->xs, v->ys, v->density, "subpair density deviates by more than eps");
        }
        RegularityVerdict ok;
        ok.kind = RegularityVerdict::Kind::certified;
        ok.pair_density = base;
        return ok;
    }

    if (trials < 0) throw std::invalid_argument("regularity: negative trial count");
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const bool flip = (t & 1) != 0;
        const auto& xs = flip ? b : a;
        const auto& ys = flip ? a : b;
        const int min_x = flip ? min_b : min_a;
        const int min_y = flip ? min_a : min_b;
        const int nx = static_cast<int>(xs.size());
        int k = min_x + rng.index(static_cast<std::size_t>(nx - min_x + 1));
        std::vector<Vertex> sub;
        for (int i : rng.sample(nx, k)) sub.push_back(xs[i]);
        if (auto v = scan_fixed_side(g, sub, ys, min_y, base, eps)) {
            if (flip) std::swap(v->xs, v->ys);
            return refuted(base, v->xs, v->ys, v->density, "subpair density deviates by more than eps");
        }
    }
    RegularityVerdict none;
    none.kind = RegularityVerdict::Kind::inconclusive;
    none.pair_density = base;
    none.reason = "no violation found in " + std::to_string(trials) + " sampled subsets";
    return none;
}

RegularityVerdict check_super_regular_pair(const Graph& g, const std::vector<Vertex>& a,
                                           const std::vector<Vertex>& b, const RegPairParams& params,
                                           RegularityMode mode, int trials, Seed seed) {
    params.validate();
    validate_pair(g, a, b);
    const Bitset amask = as_bitset(g.order(), a);
    const Bitset bmask = as_bitset(g.order(), b);
    const double base = pair_density(g, a, bmask, b.size());
    if (base < params.d - params.eps - kTol) return refuted(base, a, b, base, "pair density below d - eps");
    for (int side = 0; side < 2; ++side) {
        const auto& xs = side == 0 ? a : b;
        const auto& other = side == 0 ? b : a;
        const Bitset& omask = side == 0 ? bmask : amask;
        const double need = (params.d - params.eps) * static_cast<double>(other.size());
        for (Vertex x : xs) {
            int deg = g.row(x).count_and(omask);
            if (deg < need - kTol) {
                auto v = side == 0 ? refuted(base, {x}, b, static_cast<double>(deg) / other.size(),
                                             "vertex degree below (d - eps) times the other side")
                                   : refuted(base, a, {x}, static_cast<double>(deg) / other.size(),
                                             "vertex degree below (d - eps) times the other side");
                v.low_degree_vertex = x;
                return v;
            }
        }
    }
    return check_regular_pair(g, a, b, params, mode, trials, seed);
}

CodegreeReport codegree_screen(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                               double eps) {
    validate_pair(g, a, b);
    CodegreeReport rep;
    const Bitset amask = as_bitset(g.order(), a);
    const Bitset bmask = as_bitset(g.order(), b);
    rep.density = pair_density(g, a, bmask, b.size());
    for (Vertex x : a)
        rep.max_degree_deviation = std::max(
            rep.max_degree_deviation, std::abs(static_cast<double>(g.row(x).count_and(bmask)) / b.size() - rep.density));
    for (Vertex y : b)
        rep.max_degree_deviation = std::max(
            rep.max_degree_deviation, std::abs(static_cast<double>(g.row(y).count_and(amask)) / a.size() - rep.density));
    const double d2 = rep.density * rep.density;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Bitset ni = g.row(a[i]);
        ni &= bmask;
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            double codeg = static_cast<double>(ni.count_and(g.row(a[j]))) / b.size();
            rep.max_codegree_deviation = std::max(rep.max_codegree_deviation, std::abs(codeg - d2));
        }
    }
    rep.concentrated = rep.max_degree_deviation <= eps && rep.max_codegree_deviation <= eps;
    return rep;
}

}  // namespace robemb
