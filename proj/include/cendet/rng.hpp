#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cendet {

// splitmix64 finalizer; used for seed mixing and derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG wrapper. std::mt19937_64 output is specified by the
// standard, and all draw helpers below avoid implementation-defined
// distributions so sequences are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased uniform integer in [0, bound). bound must be > 0.
    std::uint64_t uniform_index(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform real in [0, 1) with 53 random bits.
    double uniform_real() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform_real() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace cendet
