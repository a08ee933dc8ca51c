#include "nbagg/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nbagg {

namespace {

std::string join_messages(const std::vector<Diagnostic>& issues) {
    std::ostringstream os;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i) os << "; ";
        os << issues[i].message;
    }
    return os.str();
}

void check_probabilities(const std::vector<double>& values, const char* name,
                         std::vector<Diagnostic>& issues) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        std::ostringstream os;
        if (std::isnan(v)) {
            os << name << "[" << i << "] is NaN";
            issues.push_back({IssueKind::NotANumber, os.str()});
        } else if (v < 0.0 || v > 1.0) {
            os << name << "[" << i << "] = " << v << " lies outside [0, 1]";
            issues.push_back({IssueKind::EntryOutOfRange, os.str()});
        }
    }
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> issues)
    : std::invalid_argument(join_messages(issues)), issues_(std::move(issues)) {}

ValidationError::ValidationError(IssueKind kind, const std::string& message)
    : ValidationError(std::vector<Diagnostic>{{kind, message}}) {}

ProductBernoulli::ProductBernoulli(std::vector<double> p) : p_(std::move(p)) {
    std::vector<Diagnostic> issues;
    if (p_.empty()) issues.push_back({IssueKind::EmptyPanel, "distribution has no coordinates"});
    check_probabilities(p_, "p", issues);
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

ProductBernoulli ProductBernoulli::complement() const {
    std::vector<double> q(p_.size());
    std::transform(p_.begin(), p_.end(), q.begin(), [](double v) { return 1.0 - v; });
    return ProductBernoulli(std::move(q));
}

double ProductBernoulli::mass(const std::vector<unsigned char>& bits) const {
    if (bits.size() != p_.size())
        throw std::invalid_argument("outcome length does not match distribution dimension");
    double m = 1.0;
    for (std::size_t i = 0; i < p_.size(); ++i) m *= bits[i] ? p_[i] : 1.0 - p_[i];
    return m;
}

std::vector<Diagnostic> diagnose_panel(const PanelInput& raw) {
    std::vector<Diagnostic> issues;
    if (raw.psi.empty() && raw.eta.empty()) {
        issues.push_back({IssueKind::EmptyPanel, "panel has no experts"});
    } else if (raw.psi.size() != raw.eta.size()) {
        std::ostringstream os;
        os << "psi has " << raw.psi.size() << " entries but eta has " << raw.eta.size();
        issues.push_back({IssueKind::LengthMismatch, os.str()});
    }
    check_probabilities(raw.psi, "psi", issues);
    check_probabilities(raw.eta, "eta", issues);
    if (raw.p_y) {
        const double p = *raw.p_y;
        if (std::isnan(p)) {
            issues.push_back({IssueKind::NotANumber, "p_y is NaN"});
        } else if (!(p > 0.0 && p < 1.0)) {
            std::ostringstream os;
            os << "p_y = " << p << " must lie strictly inside (0, 1)";
            issues.push_back({IssueKind::PriorOutOfRange, os.str()});
        }
    }
    return issues;
}

ExpertPanel validate_panel(const PanelInput& raw) {
    auto issues = diagnose_panel(raw);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return ExpertPanel(raw.psi, raw.eta, raw.p_y.value_or(0.5));
}

ExpertPanel::ExpertPanel(std::vector<double> psi, std::vector<double> eta, double p_y)
    : psi_(std::move(psi)), eta_(std::move(eta)), p_y_(p_y) {
    auto issues = diagnose_panel(PanelInput{psi_, eta_, p_y_});
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

bool ExpertPanel::symmetric() const noexcept { return psi_ == eta_; }

ProductBernoulli ExpertPanel::negative_law() const {
    return ProductBernoulli(eta_).complement();
}

ExpertPanel fold_bias(const ExpertPanel& panel) {
    if (panel.p_y() == 0.5) return panel;
    auto psi = panel.psi();
    auto eta = panel.eta();
    psi.push_back(panel.p_y());
    eta.push_back(panel.p_y());
    return ExpertPanel(std::move(psi), std::move(eta), 0.5);
}

BalancedAccuracy balanced_accuracy(const ExpertPanel& panel) {
    BalancedAccuracy acc;
    acc.pi.resize(panel.size());
    for (std::size_t i = 0; i < panel.size(); ++i)
        acc.pi[i] = (panel.psi()[i] + panel.eta()[i]) / 2.0;
    return acc;
}

double min_identity(double u, double v) {
    if (!(u > 0.0) || !(v > 0.0))
        throw std::domain_error("min_identity requires strictly positive arguments");
    return std::sqrt(u * v) * std::exp(-0.5 * std::abs(std::log(u / v)));
}

double balanced_min_inequality_gap(double s, double t) {
    if (!(s >= 0.0 && s <= 1.0) || !(t >= 0.0 && t <= 1.0))
        throw std::domain_error("balanced_min_inequality_gap requires s, t in [0, 1]");
    const double u = (s + t) / 2.0;
    return std::min(s, 1.0 - t) + std::min(t, 1.0 - s) - 2.0 * std::min(u, 1.0 - u);
}

}  // namespace nbagg
