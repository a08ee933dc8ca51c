// montecarlo.hpp
//
// Seeded simulation of the expert model. Trials are split into fixed-size
// blocks; block b draws from SplitMix64 seeded with mix(seed, b), so results
// depend only on (inputs, trials, seed) and never on the worker count.
#pragma once

#include <cstdint>

#include "nbagg/core.hpp"

namespace nbagg {

/// SplitMix64 (Steele, Lea and Flood 2014): state += 0x9E3779B97F4A7C15, then
/// the variant-13 finalizer. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Seed of the stream used for block `block` of a run seeded with `seed`.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept;

inline constexpr std::uint64_t kTrialsPerBlock = 1 << 16;

struct SimulationResult {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double empirical_error = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
};

struct Estimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Draws Y ~ Ber(p_y), then X_i | Y from the panel, and counts the trials on
/// which the optimal rule disagrees with Y.
SimulationResult simulate_error(const ExpertPanel& panel, std::uint64_t trials,
                                std::uint64_t seed, unsigned workers = 1);

/// Unbiased estimate of sum_x min(P(x), Q(x)): mean of min(1, Q(x)/P(x)) with
/// x ~ P. Every entry of P must lie strictly inside (0, 1).
Estimate estimate_min_mass(const ProductBernoulli& P, const ProductBernoulli& Q,
                           std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

}  // namespace nbagg
