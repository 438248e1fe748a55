#include "robemb/stats.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>

namespace robemb {

double hypergeo_chernoff_bound(double eps, double t) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("chernoff: eps must lie in (0,1)");
    if (!(t >= 0.0)) throw std::invalid_argument("chernoff: t must be non-negative");
    return 2.0 * std::exp(-eps * eps * t / 3.0);
}

bool hypergeo_chernoff_applies(double eps, double t, double mean) {
    return eps > 0.0 && eps < 1.0 && eps * mean <= t && t <= mean;
}

namespace {

void check_counts(std::int64_t hits, std::int64_t trials, double confidence) {
    if (trials < 0 || hits < 0 || hits > trials) throw std::invalid_argument("interval: bad counts");
    if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("interval: bad confidence");
}

}  // namespace

Interval clopper_pearson(std::int64_t hits, std::int64_t trials, double confidence) {
    check_counts(hits, trials, confidence);
    if (trials == 0) return {0.0, 1.0};
    using boost::math::binomial_distribution;
    const double alpha = (1.0 - confidence) / 2.0;
    const auto n = static_cast<double>(trials);
    const auto k = static_cast<double>(hits);
    Interval out;
    out.lo = hits == 0 ? 0.0 : binomial_distribution<>::find_lower_bound_on_p(n, k, alpha);
    out.hi = hits == trials ? 1.0 : binomial_distribution<>::find_upper_bound_on_p(n, k, alpha);
    return out;
}

Interval wilson(std::int64_t successes, std::int64_t trials, double confidence) {
    check_counts(successes, trials, confidence);
    if (trials == 0) return {0.0, 1.0};
    const double z = boost::math::quantile(boost::math::normal(), 1.0 - (1.0 - confidence) / 2.0);
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (phat + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
    // The closed form is exact at the boundary; rounding would leave ~1e-18 there.
    return {successes == 0 ? 0.0 : std::max(0.0, centre - half), successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

}  // namespace robemb
