// bounds.hpp
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nbagg/core.hpp"
#include "nbagg/exact.hpp"

namespace nbagg {

// Raised by the symmetric-only bounds when psi != eta somewhere or some p_i is
// 0 or 1 (the log-odds weights are undefined there).
class SymmetryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

struct BoundsReport {
    std::size_t n = 0;  // experts after folding the prior
    BalancedAccuracy pi;
    double upper_thm2 = 0.0;
    double lower_thm3 = 0.0;
    std::optional<double> lower_thm4;
    std::optional<double> bk_lower;
    std::optional<double> bk_upper;
    std::optional<double> manino_lower;
    std::optional<double> manino_upper;
    double hellinger_upper = 0.0;
    double hellinger_lower = 0.0;
    double bhattacharyya = 0.0;
    std::optional<double> exact;
};

// Every panel-level bound below folds a non-uniform prior into an extra
// expert first, so callers may pass any valid panel.

/// (1/2) 2^n sqrt(prod pi_i (1 - pi_i)), evaluated in log-domain. 0 when some
/// pi_i is 0 or 1.
double upper_bound_thm2(const ExpertPanel& panel);

/// (1/2) prod_i 2 min(pi_i, 1 - pi_i), the product-of-minima form of
/// (1/2) 2^n sqrt(prod pi pi') exp(-|gamma|_1 / 2).
double lower_bound_thm3(const ExpertPanel& panel);

/// (1/2) 2^n sqrt(prod p_i (1-p_i)) exp(-|w|_2 / 2), w_i = log(p_i/(1-p_i)).
/// Symmetric interior panels only.
double lower_bound_thm4(const ExpertPanel& panel);

/// Berend-Kontorovich: [3 / (4(1 + exp(2 Phi + 4 sqrt(Phi)))), exp(-Phi/2)],
/// Phi = sum (p_i - 1/2) w_i.
Interval bk_bounds(const ExpertPanel& panel);

/// [0.36 2^n sqrt(prod p p') exp(-|w|_2/2), (1/2) 2^n sqrt(prod p p')].
Interval manino_bounds(const ExpertPanel& panel);

/// [sqrt(prod_i ([1-(p_i-q_i)^2] / 2)), sqrt(prod_i [1-(p_i-q_i)^2])], which
/// brackets the Bhattacharyya affinity of Ber(p) and Ber(q). The lower
/// envelope halves every factor, so P = Q gives 2^(-n/2).
Interval hellinger_envelopes(const ProductBernoulli& P, const ProductBernoulli& Q);

/// All applicable bounds. Symmetric-only fields stay empty on asymmetric
/// panels and on symmetric panels with a boundary entry.
BoundsReport full_report(const ExpertPanel& panel, bool with_exact,
                         const EnumerationOptions& opts = {});

enum class CounterexampleKind {
    asymmetric_l2,   // psi = (1, 0), eta = (1-eps, eps)
    symmetric_thm4,  // p = (eps, eps)
};

struct SweepRow {
    double eps = 0.0;
    double exact = 0.0;  // enumerated min-mass
    double bound = 0.0;  // sqrt(prod a(1-a)) exp(-|log-odds|_2 / 2)
    double ratio = 0.0;  // bound / eps^2 (asymmetric) or bound / eps (symmetric)
};

/// Evaluates the two tightness counterexamples along a grid of eps in (0,1).
std::vector<SweepRow> counterexample_sweep(CounterexampleKind kind,
                                           const std::vector<double>& eps_grid);

/// The panel a counterexample row is built from.
ExpertPanel counterexample_panel(CounterexampleKind kind, double eps);

}  // namespace nbagg
