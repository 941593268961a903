#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace riskeq {

// Deterministic random source for property tests and batteries.
//
// All draws go through mt19937_64 with explicit post-processing instead of
// std::uniform_real_distribution, whose output is not pinned down by the
// standard. Same seed, same platform-independent stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    std::vector<double> uniform_vector(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (auto& e : v) e = uniform(lo, hi);
        return v;
    }

    // Probability weights on a dyadic grid: each weight is an integer
    // multiple of 2^-20 and the weights sum to 1.0 without rounding error.
    // Useful wherever tests rely on exact normalization.
    std::vector<double> dyadic_weights(std::size_t n) {
        constexpr std::uint64_t grid = 1u << 20;
        std::vector<std::uint64_t> cuts(n + 1, 0);
        cuts[n] = grid;
        for (std::size_t i = 1; i < n; ++i) cuts[i] = engine_() % (grid + 1);
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = static_cast<double>(cuts[i + 1] - cuts[i]) * 0x1.0p-20;
        }
        return w;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace riskeq
