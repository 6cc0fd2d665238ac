#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace cvm {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for one (h index, trial index) cell of a sweep:
/// mix64(mix64(mix64(master) ^ h_index) ^ trial_index).
/// Adding h values to a sweep never changes the seeds of existing cells.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t h_index,
                                    std::uint64_t trial_index) noexcept {
    return mix64(mix64(mix64(master) ^ h_index) ^ trial_index);
}

/// Seeded random stream. Wraps std::mt19937_64 (whose output sequence is fixed
/// by the standard) and derives bounded integers and doubles without going
/// through the implementation-defined std distributions, so results are
/// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n). n must be positive.
    std::size_t below(std::size_t n) {
        const auto bound = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return static_cast<std::size_t>(r % bound);
        }
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace cvm
