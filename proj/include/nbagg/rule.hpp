// rule.hpp
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nbagg/core.hpp"

namespace nbagg {

using BitVector = std::vector<unsigned char>;

inline constexpr double kDefaultClampEpsilon = 1e-12;

// Raised by decide_batch; index() names the first offending input.
class BatchLengthError : public std::invalid_argument {
public:
    BatchLengthError(std::size_t index, const std::string& what)
        : std::invalid_argument(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// The likelihood-ratio rule in log form:
///
///   score(x) = log(p_y/(1-p_y)) + sum_i [x_i w_pos_i + (1-x_i) w_neg_i],
///   w_pos_i  = log(psi_i / (1-eta_i)),   w_neg_i = log((1-psi_i) / eta_i),
///
/// deciding 1 iff score(x) >= 0. Parameters are clamped into
/// [clamp_epsilon, 1 - clamp_epsilon] before taking logs so boundary panels
/// produce large finite weights.
class DecisionRule {
public:
    DecisionRule(double offset, std::vector<double> w_pos, std::vector<double> w_neg,
                 double clamp_epsilon);

    double offset() const noexcept { return offset_; }
    const std::vector<double>& w_pos() const noexcept { return w_pos_; }
    const std::vector<double>& w_neg() const noexcept { return w_neg_; }
    double clamp_epsilon() const noexcept { return clamp_epsilon_; }
    std::size_t size() const noexcept { return w_pos_.size(); }

    double score(std::span<const unsigned char> x) const;
    int decide(std::span<const unsigned char> x) const;
    std::vector<int> decide_batch(const std::vector<BitVector>& xs) const;

private:
    double offset_;
    std::vector<double> w_pos_;
    std::vector<double> w_neg_;
    double clamp_epsilon_;
};

DecisionRule build_rule(const ExpertPanel& panel, double clamp_epsilon = kDefaultClampEpsilon);

/// Parses a string over {0,1}; character i is expert i. Throws
/// std::invalid_argument on any other character or an empty string.
BitVector parse_bits(const std::string& text);

/// P(rule(X) != Y) under the panel's generative model, by summing the
/// misclassified mass over all of {0,1}^n.
double rule_error(const DecisionRule& rule, const ExpertPanel& panel);

}  // namespace nbagg
