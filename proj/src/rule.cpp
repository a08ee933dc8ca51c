#include "nbagg/rule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "nbagg/exact.hpp"

namespace nbagg {

namespace {

double clamp_probability(double p, double eps) { return std::clamp(p, eps, 1.0 - eps); }

}  // namespace

DecisionRule::DecisionRule(double offset, std::vector<double> w_pos, std::vector<double> w_neg,
                           double clamp_epsilon)
    : offset_(offset), w_pos_(std::move(w_pos)), w_neg_(std::move(w_neg)),
      clamp_epsilon_(clamp_epsilon) {
    if (w_pos_.size() != w_neg_.size())
        throw std::invalid_argument("w_pos and w_neg must have equal length");
}

double DecisionRule::score(std::span<const unsigned char> x) const {
    if (x.size() != w_pos_.size()) {
        std::ostringstream os;
        os << "input has " << x.size() << " bits but the rule has " << w_pos_.size() << " experts";
        throw std::invalid_argument(os.str());
    }
    double s = offset_;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] ? w_pos_[i] : w_neg_[i];
    return s;
}

int DecisionRule::decide(std::span<const unsigned char> x) const { return score(x) >= 0.0 ? 1 : 0; }

std::vector<int> DecisionRule::decide_batch(const std::vector<BitVector>& xs) const {
    std::vector<int> out;
    out.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (xs[k].size() != size()) {
            std::ostringstream os;
            os << "input " << k << " has " << xs[k].size() << " bits, expected " << size();
            throw BatchLengthError(k, os.str());
        }
        out.push_back(decide(xs[k]));
    }
    return out;
}

DecisionRule build_rule(const ExpertPanel& panel, double clamp_epsilon) {
    if (!(clamp_epsilon > 0.0 && clamp_epsilon <= 1e-3))
        throw std::invalid_argument("clamp_epsilon must lie in (0, 1e-3]");
    const std::size_t n = panel.size();
    std::vector<double> w_pos(n), w_neg(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double psi = clamp_probability(panel.psi()[i], clamp_epsilon);
        const double eta = clamp_probability(panel.eta()[i], clamp_epsilon);
        w_pos[i] = std::log(psi) - std::log(1.0 - eta);
        w_neg[i] = std::log(1.0 - psi) - std::log(eta);
    }
    const double p_y = clamp_probability(panel.p_y(), clamp_epsilon);
    const double offset = std::log(p_y) - std::log(1.0 - p_y);
    return DecisionRule(offset, std::move(w_pos), std::move(w_neg), clamp_epsilon);
}

BitVector parse_bits(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("bit string is empty");
    BitVector bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit string may contain only '0' and '1': " + text);
        bits.push_back(static_cast<unsigned char>(c - '0'));
    }
    return bits;
}

double rule_error(const DecisionRule& rule, const ExpertPanel& panel) {
    const std::size_t n = panel.size();
    if (rule.size() != n) throw std::invalid_argument("rule and panel sizes differ");
    if (n > kDefaultMaxEnumeration)
        throw EnumerationLimitError(n, kDefaultMaxEnumeration);

    const auto& psi = panel.psi();
    const auto& eta = panel.eta();
    const double p1 = panel.p_y();
    const double p0 = 1.0 - p1;
    BitVector x(n);
    double err = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        double mu = 1.0;  // P(X = x | Y = 1)
        double nu = 1.0;  // P(X = x | Y = 0)
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<unsigned char>((mask >> i) & 1u);
            mu *= x[i] ? psi[i] : 1.0 - psi[i];
            nu *= x[i] ? 1.0 - eta[i] : eta[i];
        }
        err += rule.decide(x) ? p0 * nu : p1 * mu;
    }
    return err;
}

}  // namespace nbagg
