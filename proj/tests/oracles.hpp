// oracles.hpp
//
// Brute-force reference computations for the tests. Everything here works on
// plain vectors and enumerates {0,1}^n bit by bit; none of it calls into the
// library's enumeration kernel or closed forms.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "nbagg/core.hpp"

namespace oracle {

inline double outcome_mass(const std::vector<double>& p, std::uint64_t mask) {
    double m = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) m *= ((mask >> i) & 1u) ? p[i] : 1.0 - p[i];
    return m;
}

// Full mass vector of Ber(p), indexed by bitmask (bit i = coordinate i).
inline std::vector<double> masses(const std::vector<double>& p) {
    std::vector<double> out(std::size_t{1} << p.size());
    for (std::uint64_t m = 0; m < out.size(); ++m) out[m] = outcome_mass(p, m);
    return out;
}

inline std::vector<double> complement(const std::vector<double>& p) {
    std::vector<double> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = 1.0 - p[i];
    return q;
}

inline double min_mass(const std::vector<double>& p, const std::vector<double>& q) {
    const auto a = masses(p), b = masses(q);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::min(a[k], b[k]);
    return s;
}

inline double tv(const std::vector<double>& p, const std::vector<double>& q) {
    const auto a = masses(p), b = masses(q);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
    return 0.5 * s;
}

inline double bhattacharyya(const std::vector<double>& p, const std::vector<double>& q) {
    const auto a = masses(p), b = masses(q);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::sqrt(a[k] * b[k]);
    return s;
}

// ||Ber(p) - Ber(q)||_r with r = 1, 2, or 0 standing for infinity.
inline double lr_norm(const std::vector<double>& p, const std::vector<double>& q, int r) {
    const auto a = masses(p), b = masses(q);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = std::abs(a[k] - b[k]);
        if (r == 1) s += d;
        if (r == 2) s += d * d;
        if (r == 0) s = std::max(s, d);
    }
    return r == 2 ? std::sqrt(s) : s;
}

// P(g(X) != Y) for an arbitrary rule g given as a truth table over masks.
inline double rule_error(const std::vector<double>& psi, const std::vector<double>& eta,
                         double p_y, const std::function<int(std::uint64_t)>& g) {
    const auto mu = masses(psi);               // X | Y = 1
    const auto nu = masses(complement(eta));   // X | Y = 0
    double e = 0.0;
    for (std::uint64_t m = 0; m < mu.size(); ++m)
        e += g(m) ? (1.0 - p_y) * nu[m] : p_y * mu[m];
    return e;
}

// Bayes error: sum_x min(p_y mu(x), (1-p_y) nu(x)).
inline double bayes_error(const std::vector<double>& psi, const std::vector<double>& eta,
                          double p_y) {
    const auto mu = masses(psi);
    const auto nu = masses(complement(eta));
    double e = 0.0;
    for (std::size_t m = 0; m < mu.size(); ++m) e += std::min(p_y * mu[m], (1.0 - p_y) * nu[m]);
    return e;
}

inline std::vector<unsigned char> bits_of(std::uint64_t mask, std::size_t n) {
    std::vector<unsigned char> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<unsigned char>((mask >> i) & 1u);
    return x;
}

// Random test inputs.
class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    std::size_t size(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    std::vector<double> vec(std::size_t n, double lo = 0.0, double hi = 1.0) {
        std::vector<double> v(n);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }
    nbagg::ExpertPanel panel(std::size_t n, double lo, double hi, double p_y = 0.5) {
        return nbagg::ExpertPanel(vec(n, lo, hi), vec(n, lo, hi), p_y);
    }
    nbagg::ExpertPanel symmetric_panel(std::size_t n, double lo, double hi) {
        auto p = vec(n, lo, hi);
        return nbagg::ExpertPanel(p, p, 0.5);
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
