#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace robemb {

std::uint64_t splitmix64(std::uint64_t x);

// Every randomized operation takes a Seed. Trial t of an experiment runs
// under child(t) = value XOR t, so a trial can be replayed in isolation.
// stream(tag) gives an independent sub-stream for a nested purpose.
struct Seed {
    std::uint64_t value = 0;

    Seed child(std::uint64_t index) const { return Seed{value ^ index}; }
    Seed stream(std::uint64_t tag) const;
    friend bool operator==(Seed a, Seed b) { return a.value == b.value; }
};

// mt19937_64 plus hand-rolled distributions, so a seed yields the same
// numbers on every standard library.
class Rng {
public:
    explicit Rng(Seed seed);

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);
    int index(std::size_t n) { return static_cast<int>(below(n)); }
    // Uniform in [0, 1) with 53 random bits.
    double uniform();
    bool bernoulli(double p) { return uniform() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), in random order.
    std::vector<int> sample(int n, int k);

private:
    std::mt19937_64 engine_;
};

}  // namespace robemb
