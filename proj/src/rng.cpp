#include "robemb/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace robemb {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Seed Seed::stream(std::uint64_t tag) const {
    return Seed{splitmix64(value ^ splitmix64(tag + 0x5851f42d4c957f2dULL))};
}

Rng::Rng(Seed seed) : engine_(splitmix64(seed.value)) {}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    // Rejection on the top of the range keeps the draw exactly uniform.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<int> Rng::sample(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("Rng::sample: k out of range");
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace robemb
