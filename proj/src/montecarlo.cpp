#include "nbagg/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "nbagg/exact.hpp"
#include "nbagg/rule.hpp"

namespace nbagg {

namespace {

std::uint64_t block_count(std::uint64_t trials) {
    return (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
}

std::uint64_t block_size(std::uint64_t trials, std::uint64_t b) {
    return std::min(kTrialsPerBlock, trials - b * kTrialsPerBlock);
}

// Runs body(b) for every block b on up to `workers` threads.
template <class Body>
void for_each_block(std::uint64_t blocks, unsigned workers, Body body) {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) body(b);
    };
    const unsigned threads =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), blocks));
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
}

}  // namespace

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) noexcept {
    SplitMix64 outer(seed);
    const std::uint64_t base = outer();
    SplitMix64 inner(base ^ (block * 0xD1B54A32D192ED03ull));
    return inner();
}

SimulationResult simulate_error(const ExpertPanel& panel, std::uint64_t trials,
                                std::uint64_t seed, unsigned workers) {
    if (trials == 0) throw std::invalid_argument("trials must be at least 1");
    const DecisionRule rule = build_rule(panel);
    const auto& psi = panel.psi();
    const auto& eta = panel.eta();
    const double p_y = panel.p_y();
    const std::size_t n = panel.size();

    const std::uint64_t blocks = block_count(trials);
    std::vector<std::uint64_t> errors(blocks, 0);
    for_each_block(blocks, workers, [&](std::uint64_t b) {
        SplitMix64 rng(block_seed(seed, b));
        BitVector x(n);
        std::uint64_t count = 0;
        for (std::uint64_t t = 0, m = block_size(trials, b); t < m; ++t) {
            const int y = rng.uniform() < p_y ? 1 : 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double u = rng.uniform();
                x[i] = static_cast<unsigned char>(y ? u < psi[i] : !(u < eta[i]));
            }
            count += rule.decide(x) != y;
        }
        errors[b] = count;
    });

    SimulationResult r;
    r.trials = trials;
    r.seed = seed;
    for (auto c : errors) r.errors += c;
    r.empirical_error = static_cast<double>(r.errors) / static_cast<double>(trials);
    r.std_error = std::sqrt(r.empirical_error * (1.0 - r.empirical_error) /
                            static_cast<double>(trials));
    return r;
}

Estimate estimate_min_mass(const ProductBernoulli& P, const ProductBernoulli& Q,
                           std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (P.size() != Q.size()) throw std::invalid_argument("dimension mismatch");
    if (trials == 0) throw std::invalid_argument("trials must be at least 1");
    const std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(P[i] > 0.0 && P[i] < 1.0)) {
            std::ostringstream os;
            os << "sampling law needs interior entries; p[" << i << "] = " << P[i];
            throw std::invalid_argument(os.str());
        }
    }
    // Per-coordinate log(Q/P) for x_i = 1 and x_i = 0.
    std::vector<double> lr_one(n), lr_zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        lr_one[i] = std::log(Q[i]) - std::log(P[i]);
        lr_zero[i] = std::log1p(-Q[i]) - std::log1p(-P[i]);
    }

    const std::uint64_t blocks = block_count(trials);
    std::vector<double> sums(blocks, 0.0), squares(blocks, 0.0);
    for_each_block(blocks, workers, [&](std::uint64_t b) {
        SplitMix64 rng(block_seed(seed, b));
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t t = 0, m = block_size(trials, b); t < m; ++t) {
            double log_ratio = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                log_ratio += rng.uniform() < P[i] ? lr_one[i] : lr_zero[i];
            const double v = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
            s += v;
            s2 += v * v;
        }
        sums[b] = s;
        squares[b] = s2;
    });

    double s = 0.0, s2 = 0.0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        s += sums[b];
        s2 += squares[b];
    }
    const double N = static_cast<double>(trials);
    Estimate e;
    e.estimate = s / N;
    if (trials > 1) {
        const double var = std::max(0.0, (s2 - s * s / N) / (N - 1.0));
        e.std_error = std::sqrt(var / N);
    }
    return e;
}

}  // namespace nbagg
