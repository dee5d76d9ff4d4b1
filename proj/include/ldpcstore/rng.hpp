#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ldpcstore {

// Deterministic RNG with portable distributions.
//
// std::mt19937_64 output is specified bit-exactly by the standard, but the
// std::uniform_* distributions are not; every draw here goes through our own
// reductions so that seeded runs reproduce byte-identically on any platform.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling; unbiased
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool coin(double p) { return uniform() < p; }

    // In-place Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derive an independent child seed (for per-node / per-graph streams).
    std::uint64_t fork_seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace ldpcstore
