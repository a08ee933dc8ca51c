#include <gtest/gtest.h>

#include <cmath>

#include "nbagg/exact.hpp"
#include "nbagg/rule.hpp"
#include "oracles.hpp"

using namespace nbagg;

namespace {

// Smallest |score| over all inputs; panels with a tiny margin are tie-prone.
double min_margin(const DecisionRule& rule) {
    double m = INFINITY;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rule.size()); ++mask)
        m = std::min(m, std::abs(rule.score(oracle::bits_of(mask, rule.size()))));
    return m;
}

}  // namespace

TEST(BuildRule, WeightsAreLogLikelihoodRatios) {
    const ExpertPanel panel({0.9, 0.3}, {0.8, 0.6}, 0.7);
    const DecisionRule rule = build_rule(panel);
    EXPECT_NEAR(rule.offset(), std::log(0.7 / 0.3), 1e-15);
    EXPECT_DOUBLE_EQ(rule.w_pos()[0], std::log(0.9) - std::log(1.0 - 0.8));
    EXPECT_DOUBLE_EQ(rule.w_neg()[1], std::log(1.0 - 0.3) - std::log(0.6));
    EXPECT_EQ(rule.clamp_epsilon(), kDefaultClampEpsilon);
}

TEST(BuildRule, RejectsBadClampEpsilon) {
    const ExpertPanel panel({0.9}, {0.8});
    EXPECT_THROW(build_rule(panel, 0.0), std::invalid_argument);
    EXPECT_THROW(build_rule(panel, 1e-2), std::invalid_argument);
}

TEST(BuildRule, BoundaryPanelsGiveFiniteWeights) {
    const DecisionRule rule = build_rule(ExpertPanel({1.0, 0.0}, {0.0, 1.0}));
    for (double w : rule.w_pos()) EXPECT_TRUE(std::isfinite(w));
    for (double w : rule.w_neg()) EXPECT_TRUE(std::isfinite(w));
}

TEST(Decide, StrongExpertOutvotesTwoWeakOnes) {
    const DecisionRule rule = build_rule(ExpertPanel({0.9, 0.6, 0.6}, {0.9, 0.6, 0.6}));
    const BitVector x{1, 0, 0};
    EXPECT_NEAR(rule.score(x), 1.386294361119891, 1e-12);
    EXPECT_EQ(rule.decide(x), 1);
}

TEST(Decide, AllOnesWithInformativeExpertsDecidesOne) {
    oracle::Generator gen(21);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = gen.size(1, 10);
        std::vector<double> psi(n), eta(n);
        for (std::size_t i = 0; i < n; ++i) {
            eta[i] = gen.uniform(0.01, 0.99);
            psi[i] = gen.uniform(1.0 - eta[i] + 1e-6, 1.0);
        }
        const DecisionRule rule = build_rule(ExpertPanel(psi, eta));
        EXPECT_EQ(rule.decide(BitVector(n, 1)), 1);
    }
}

TEST(Decide, TieResolvesToOne) {
    const DecisionRule rule(0.0, {0.0, 0.0}, {0.0, 0.0}, kDefaultClampEpsilon);
    EXPECT_EQ(rule.decide(BitVector{0, 0}), 1);
    EXPECT_EQ(rule.decide(BitVector{1, 0}), 1);
}

TEST(Decide, SingleExpert) {
    const DecisionRule rule = build_rule(ExpertPanel({0.9}, {0.8}));
    EXPECT_EQ(rule.decide(BitVector{1}), 1);
    EXPECT_EQ(rule.decide(BitVector{0}), 0);
}

TEST(Decide, AsymmetricCounterexamplePanel) {
    const ExpertPanel panel({1.0, 0.0}, {0.9, 0.1});
    const DecisionRule rule = build_rule(panel);
    EXPECT_EQ(rule.decide(BitVector{1, 0}), 1);
    // No other truth table does better.
    const double f_err = oracle::rule_error(panel.psi(), panel.eta(), 0.5, [&](std::uint64_t m) {
        return rule.decide(oracle::bits_of(m, 2));
    });
    for (std::uint64_t table = 0; table < 16; ++table) {
        const double e = oracle::rule_error(panel.psi(), panel.eta(), 0.5,
                                            [&](std::uint64_t m) { return int((table >> m) & 1u); });
        EXPECT_GE(e, f_err - 1e-12);
    }
}

TEST(Decide, LengthMismatchThrows) {
    const DecisionRule rule = build_rule(ExpertPanel({0.9, 0.7}, {0.8, 0.6}));
    EXPECT_THROW(rule.decide(BitVector{1}), std::invalid_argument);
}

// With psi = eta = p the rule is the weighted vote sgn(sum w_i (2x_i - 1)),
// w_i = log(p_i / (1 - p_i)).
TEST(Decide, SymmetricPanelIsCenteredWeightedVote) {
    oracle::Generator gen(22);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = gen.size(1, 8);
        const ExpertPanel panel = gen.symmetric_panel(n, 0.01, 0.99);
        const DecisionRule rule = build_rule(panel);
        if (min_margin(rule) < 1e-9) continue;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            const auto x = oracle::bits_of(m, n);
            double vote = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double p = panel.psi()[i];
                vote += std::log(p / (1.0 - p)) * (2.0 * x[i] - 1.0);
            }
            EXPECT_EQ(rule.decide(x), vote >= 0.0 ? 1 : 0);
        }
    }
}

TEST(DecideBatch, EmptyAndRepeated) {
    const DecisionRule rule = build_rule(ExpertPanel({0.9, 0.7}, {0.8, 0.6}));
    EXPECT_TRUE(rule.decide_batch({}).empty());
    const BitVector x{0, 1};
    const auto out = rule.decide_batch({x, x});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0], out[1]);
    EXPECT_EQ(out[0], rule.decide(x));
}

TEST(DecideBatch, MatchesPerCallDecide) {
    oracle::Generator gen(23);
    const DecisionRule rule = build_rule(gen.panel(3, 0.0, 1.0));
    std::vector<BitVector> xs;
    for (std::uint64_t m = 0; m < 8; ++m) xs.push_back(oracle::bits_of(m, 3));
    const auto out = rule.decide_batch(xs);
    for (std::size_t k = 0; k < xs.size(); ++k) EXPECT_EQ(out[k], rule.decide(xs[k]));
}

TEST(DecideBatch, ReportsOffendingIndex) {
    const DecisionRule rule = build_rule(ExpertPanel({0.9, 0.7}, {0.8, 0.6}));
    try {
        rule.decide_batch({{0, 1}, {1, 1}, {1}, {0}});
        FAIL() << "expected BatchLengthError";
    } catch (const BatchLengthError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
}

TEST(ParseBits, ExpertOneIsLeftmost) {
    EXPECT_EQ(parse_bits("100"), (BitVector{1, 0, 0}));
    EXPECT_THROW(parse_bits(""), std::invalid_argument);
    EXPECT_THROW(parse_bits("10a"), std::invalid_argument);
}

TEST(Optimality, NoTruthTableBeatsTheRule) {
    oracle::Generator gen(24);
    int checked = 0;
    while (checked < 60) {
        const std::size_t n = gen.size(1, 3);
        const double p_y = checked % 2 ? gen.uniform(0.2, 0.8) : 0.5;
        const ExpertPanel panel = gen.panel(n, 0.01, 0.99, p_y);
        const DecisionRule rule = build_rule(panel);
        if (min_margin(rule) < 1e-6) continue;
        ++checked;
        const double f_err = oracle::rule_error(panel.psi(), panel.eta(), p_y, [&](std::uint64_t m) {
            return rule.decide(oracle::bits_of(m, n));
        });
        const std::uint64_t tables = std::uint64_t{1} << (std::uint64_t{1} << n);
        for (std::uint64_t table = 0; table < tables; ++table) {
            const double e = oracle::rule_error(panel.psi(), panel.eta(), p_y, [&](std::uint64_t m) {
                return int((table >> m) & 1u);
            });
            ASSERT_GE(e, f_err - 1e-12) << "table " << table;
        }
    }
}

TEST(RuleError, EqualsHalfMinMassForUniformPrior) {
    oracle::Generator gen(25);
    for (int t = 0; t < 50; ++t) {
        const ExpertPanel panel = gen.panel(gen.size(1, 12), 0.0, 1.0);
        const double direct = rule_error(build_rule(panel), panel);
        const double via_min_mass = 0.5 * min_mass(panel.positive_law(), panel.negative_law());
        EXPECT_NEAR(direct, via_min_mass, 1e-12);
    }
}

TEST(RuleError, EqualsBayesErrorForAnyPrior) {
    oracle::Generator gen(26);
    for (int t = 0; t < 50; ++t) {
        const double p_y = gen.uniform(0.05, 0.95);
        const ExpertPanel panel = gen.panel(gen.size(1, 8), 0.0, 1.0, p_y);
        EXPECT_NEAR(rule_error(build_rule(panel), panel),
                    oracle::bayes_error(panel.psi(), panel.eta(), p_y), 1e-12);
    }
}

// Given Y = 1 the rule errs exactly where Ber(psi)(x) < Ber(1 - eta)(x).
TEST(RuleError, MistakesGivenPositiveAreWhereMuIsBelowNu) {
    oracle::Generator gen(27);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = gen.size(1, 8);
        const ExpertPanel panel = gen.panel(n, 0.01, 0.99);
        const DecisionRule rule = build_rule(panel);
        if (min_margin(rule) < 1e-9) continue;
        const auto mu = oracle::masses(panel.psi());
        const auto nu = oracle::masses(oracle::complement(panel.eta()));
        for (std::uint64_t m = 0; m < mu.size(); ++m) {
            const bool errs_given_one = rule.decide(oracle::bits_of(m, n)) == 0;
            EXPECT_EQ(errs_given_one, mu[m] < nu[m]);
        }
    }
}

TEST(BuildRule, DecisionsStableUnderSmallerClamp) {
    oracle::Generator gen(28);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = gen.size(1, 8);
        const ExpertPanel panel = gen.panel(n, 1e-3, 1.0 - 1e-3);
        const DecisionRule a = build_rule(panel, 1e-12);
        const DecisionRule b = build_rule(panel, 1e-13);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            const auto x = oracle::bits_of(m, n);
            EXPECT_EQ(a.decide(x), b.decide(x));
        }
    }
}
