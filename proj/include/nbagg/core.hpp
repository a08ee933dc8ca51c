// core.hpp
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nbagg {

enum class IssueKind {
    EmptyPanel,
    LengthMismatch,
    EntryOutOfRange,
    PriorOutOfRange,
    NotANumber,
    Malformed,
};

struct Diagnostic {
    IssueKind kind;
    std::string message;
};

// Thrown when panel or distribution data fails validation. Carries every
// problem found, not just the first.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<Diagnostic> issues);
    explicit ValidationError(IssueKind kind, const std::string& message);

    const std::vector<Diagnostic>& issues() const noexcept { return issues_; }

private:
    std::vector<Diagnostic> issues_;
};

// Unvalidated panel data as it arrives from a file or a caller.
struct PanelInput {
    std::vector<double> psi;
    std::vector<double> eta;
    std::optional<double> p_y;
};

/// A product Bernoulli measure Ber(p) on {0,1}^n. Entries may sit on the
/// boundary {0, 1}.
class ProductBernoulli {
public:
    explicit ProductBernoulli(std::vector<double> p);

    const std::vector<double>& p() const noexcept { return p_; }
    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }

    /// Ber(1 - p).
    ProductBernoulli complement() const;

    /// Mass of a single outcome; bits[i] is coordinate i.
    double mass(const std::vector<unsigned char>& bits) const;

private:
    std::vector<double> p_;
};

/// Conditionally independent binary experts: sensitivities psi, specificities
/// eta and the prior P(Y=1).
class ExpertPanel {
public:
    ExpertPanel(std::vector<double> psi, std::vector<double> eta, double p_y = 0.5);

    const std::vector<double>& psi() const noexcept { return psi_; }
    const std::vector<double>& eta() const noexcept { return eta_; }
    double p_y() const noexcept { return p_y_; }
    std::size_t size() const noexcept { return psi_.size(); }

    /// True when psi_i == eta_i for every expert (exact equality).
    bool symmetric() const noexcept;

    /// Ber(psi): law of the agreement pattern given Y = 1.
    ProductBernoulli positive_law() const { return ProductBernoulli(psi_); }
    /// Ber(1 - eta): law of X given Y = 0.
    ProductBernoulli negative_law() const;

    friend bool operator==(const ExpertPanel&, const ExpertPanel&) = default;

private:
    std::vector<double> psi_;
    std::vector<double> eta_;
    double p_y_;
};

struct BalancedAccuracy {
    std::vector<double> pi;
};

/// All problems with a candidate panel; empty when it is valid.
std::vector<Diagnostic> diagnose_panel(const PanelInput& raw);

/// Returns a validated panel or throws ValidationError. Never clamps.
ExpertPanel validate_panel(const PanelInput& raw);

/// Replaces a non-uniform prior by an extra expert with psi = eta = p_y and
/// a uniform prior. Panels with p_y == 0.5 are returned unchanged.
ExpertPanel fold_bias(const ExpertPanel& panel);

BalancedAccuracy balanced_accuracy(const ExpertPanel& panel);

/// sqrt(uv) * exp(-|log(u/v)| / 2), which equals min(u, v).
double min_identity(double u, double v);

/// [min(s,1-t) + min(t,1-s)] - 2 min(u,1-u) with u = (s+t)/2. Never negative.
double balanced_min_inequality_gap(double s, double t);

}  // namespace nbagg
