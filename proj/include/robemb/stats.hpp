#pragma once

#include <cstdint>

namespace robemb {

// Two-sided hypergeometric tail bound P(|X - EX| >= t) <= 2 exp(-eps^2 t / 3).
// Meaningful for eps*E(X) <= t <= E(X); eps must lie strictly between 0 and 1.
double hypergeo_chernoff_bound(double eps, double t);
bool hypergeo_chernoff_applies(double eps, double t, double mean);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

// Exact (Clopper-Pearson) binomial confidence interval.
Interval clopper_pearson(std::int64_t hits, std::int64_t trials, double confidence = 0.99);

// Wilson score interval.
Interval wilson(std::int64_t successes, std::int64_t trials, double confidence = 0.95);

}  // namespace robemb
