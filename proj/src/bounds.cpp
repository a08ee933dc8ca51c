#include "nbagg/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace nbagg {

namespace {

// log(2^n sqrt(prod a_i (1 - a_i))), or -inf when some a_i is 0 or 1.
double log_scaled_root_product(const std::vector<double>& a) {
    double acc = static_cast<double>(a.size()) * std::numbers::ln2;
    for (double v : a) {
        if (v <= 0.0 || v >= 1.0) return -std::numeric_limits<double>::infinity();
        acc += 0.5 * (std::log(v) + std::log1p(-v));
    }
    return acc;
}

double log_odds_l2(const std::vector<double>& a) {
    double sq = 0.0;
    for (double v : a) {
        const double w = std::log(v) - std::log1p(-v);
        sq += w * w;
    }
    return std::sqrt(sq);
}

// The folded panel's common accuracy vector, or SymmetryError.
std::vector<double> symmetric_accuracies(const ExpertPanel& panel) {
    const ExpertPanel folded = fold_bias(panel);
    if (!folded.symmetric())
        throw SymmetryError("bound requires a symmetric panel (psi == eta entrywise)");
    for (std::size_t i = 0; i < folded.size(); ++i) {
        const double p = folded.psi()[i];
        if (p <= 0.0 || p >= 1.0) {
            std::ostringstream os;
            os << "bound requires interior accuracies; p[" << i << "] = " << p;
            throw SymmetryError(os.str());
        }
    }
    return folded.psi();
}

}  // namespace

double upper_bound_thm2(const ExpertPanel& panel) {
    const auto pi = balanced_accuracy(fold_bias(panel)).pi;
    return 0.5 * std::exp(log_scaled_root_product(pi));
}

double lower_bound_thm3(const ExpertPanel& panel) {
    const auto pi = balanced_accuracy(fold_bias(panel)).pi;
    double log_prod = 0.0;
    for (double v : pi) {
        const double m = std::min(v, 1.0 - v);
        if (m <= 0.0) return 0.0;
        log_prod += std::log(2.0 * m);
    }
    return 0.5 * std::exp(log_prod);
}

double lower_bound_thm4(const ExpertPanel& panel) {
    const auto p = symmetric_accuracies(panel);
    return 0.5 * std::exp(log_scaled_root_product(p) - 0.5 * log_odds_l2(p));
}

Interval bk_bounds(const ExpertPanel& panel) {
    const auto p = symmetric_accuracies(panel);
    double phi = 0.0;
    for (double v : p) phi += (v - 0.5) * (std::log(v) - std::log1p(-v));
    return {3.0 / (4.0 * (1.0 + std::exp(2.0 * phi + 4.0 * std::sqrt(phi)))),
            std::exp(-phi / 2.0)};
}

Interval manino_bounds(const ExpertPanel& panel) {
    const auto p = symmetric_accuracies(panel);
    const double log_scale = log_scaled_root_product(p);
    return {0.36 * std::exp(log_scale - 0.5 * log_odds_l2(p)), 0.5 * std::exp(log_scale)};
}

Interval hellinger_envelopes(const ProductBernoulli& P, const ProductBernoulli& Q) {
    if (P.size() != Q.size()) throw std::invalid_argument("dimension mismatch");
    double upper = 1.0, lower = 1.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const double d = P[i] - Q[i];
        upper *= 1.0 - d * d;
        lower *= (1.0 - d * d) / 2.0;
    }
    return {std::sqrt(lower), std::sqrt(upper)};
}

BoundsReport full_report(const ExpertPanel& panel, bool with_exact,
                         const EnumerationOptions& opts) {
    const ExpertPanel folded = fold_bias(panel);
    BoundsReport r;
    r.n = folded.size();
    r.pi = balanced_accuracy(folded);
    r.upper_thm2 = upper_bound_thm2(folded);
    r.lower_thm3 = lower_bound_thm3(folded);

    const ProductBernoulli P = folded.positive_law();
    const ProductBernoulli Q = folded.negative_law();
    const Interval hell = hellinger_envelopes(P, Q);
    r.hellinger_lower = hell.lower;
    r.hellinger_upper = hell.upper;
    r.bhattacharyya = bhattacharyya(P, Q);

    try {
        r.lower_thm4 = lower_bound_thm4(folded);
        const Interval bk = bk_bounds(folded);
        r.bk_lower = bk.lower;
        r.bk_upper = bk.upper;
        const Interval man = manino_bounds(folded);
        r.manino_lower = man.lower;
        r.manino_upper = man.upper;
    } catch (const SymmetryError&) {
        r.lower_thm4.reset();
        r.bk_lower.reset();
        r.bk_upper.reset();
        r.manino_lower.reset();
        r.manino_upper.reset();
    }

    if (with_exact) r.exact = optimal_error(panel, opts);
    return r;
}

ExpertPanel counterexample_panel(CounterexampleKind kind, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        std::ostringstream os;
        os << "eps = " << eps << " must lie strictly inside (0, 1)";
        throw std::invalid_argument(os.str());
    }
    switch (kind) {
        case CounterexampleKind::asymmetric_l2:
            return ExpertPanel({1.0, 0.0}, {1.0 - eps, eps});
        case CounterexampleKind::symmetric_thm4:
            return ExpertPanel({eps, eps}, {eps, eps});
    }
    throw std::invalid_argument("unknown counterexample kind");
}

std::vector<SweepRow> counterexample_sweep(CounterexampleKind kind,
                                           const std::vector<double>& eps_grid) {
    std::vector<SweepRow> rows;
    rows.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        const ExpertPanel panel = counterexample_panel(kind, eps);
        const auto pi = balanced_accuracy(panel).pi;
        SweepRow row;
        row.eps = eps;
        row.exact = min_mass(panel.positive_law(), panel.negative_law());
        // sqrt(prod pi (1-pi)) exp(-|gamma|_2 / 2), without the 2^n factor.
        row.bound = std::exp(log_scaled_root_product(pi) -
                             static_cast<double>(pi.size()) * std::numbers::ln2 -
                             0.5 * log_odds_l2(pi));
        row.ratio = kind == CounterexampleKind::asymmetric_l2 ? row.bound / (eps * eps)
                                                              : row.bound / eps;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace nbagg
