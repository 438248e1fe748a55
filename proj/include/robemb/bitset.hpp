#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace robemb {

// Fixed-width bitset sized at runtime. All binary operations assume equal widths.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    int width() const { return bits_; }
    void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set_all() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        trim();
    }
    void clear() {
        for (auto& w : words_) w = 0;
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    // Lowest set bit at or after `from`, or -1.
    int next(int from) const {
        if (from >= bits_) return -1;
        std::size_t wi = static_cast<std::size_t>(from) >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return static_cast<int>(wi * 64 + std::countr_zero(w));
            if (++wi == words_.size()) return -1;
            w = words_[wi];
        }
    }
    int first() const { return next(0); }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    // this &= ~o
    Bitset& subtract(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    int count_and(const Bitset& o) const {
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }
    friend bool operator==(const Bitset&, const Bitset&) = default;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                f(static_cast<int>(wi * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

private:
    void trim() {
        if (bits_ & 63) words_.back() &= (std::uint64_t{1} << (bits_ & 63)) - 1;
    }

    int bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace robemb
