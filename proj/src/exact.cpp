#include "nbagg/exact.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <thread>
#include <vector>

namespace nbagg {

namespace {

// Number of trailing coordinates expanded into a flat table at each leaf of
// the depth-first walk.
constexpr std::size_t kLeafBlock = 10;

std::string limit_message(std::size_t n, std::size_t n_max) {
    std::ostringstream os;
    os << "dimension " << n << " exceeds the enumeration limit " << n_max
       << "; use the Monte Carlo estimator";
    return os.str();
}

void require_same_dimension(const ProductBernoulli& P, const ProductBernoulli& Q) {
    if (P.size() != Q.size()) {
        std::ostringstream os;
        os << "dimension mismatch: " << P.size() << " vs " << Q.size();
        throw std::invalid_argument(os.str());
    }
}

// Reduces leaf(P(x), Q(x)) over x in {0,1}^n. Coordinates [0, split) are
// walked depth-first with running products; the remaining ones come from
// precomputed tables. Children are combined as combine(bit 0, bit 1), and the
// parallel path rebuilds exactly the same tree from its per-prefix partials,
// so the result does not depend on the worker count.
template <class Leaf, class Combine>
class HypercubeReducer {
public:
    HypercubeReducer(const ProductBernoulli& P, const ProductBernoulli& Q, Leaf leaf,
                     Combine combine)
        : p_(P.p()), q_(Q.p()), leaf_(leaf), combine_(combine) {
        const std::size_t n = p_.size();
        const std::size_t block = std::min(n, kLeafBlock);
        split_ = n - block;
        const std::size_t width = std::size_t{1} << block;
        table_p_.assign(width, 1.0);
        table_q_.assign(width, 1.0);
        // Entry j holds the block coordinates with the first block coordinate
        // as the most significant bit, matching the depth-first order.
        for (std::size_t j = 0; j < width; ++j) {
            double a = 1.0, b = 1.0;
            for (std::size_t k = 0; k < block; ++k) {
                const std::size_t i = split_ + k;
                const bool one = (j >> (block - 1 - k)) & 1u;
                a *= one ? p_[i] : 1.0 - p_[i];
                b *= one ? q_[i] : 1.0 - q_[i];
            }
            table_p_[j] = a;
            table_q_[j] = b;
        }
    }

    // weight_p and weight_q scale P and Q (the root of the walk).
    double run(unsigned workers, double weight_p = 1.0, double weight_q = 1.0) const {
        std::size_t depth = 0;
        while ((std::size_t{1} << depth) < workers && depth < split_) ++depth;
        if (depth == 0) return walk(0, weight_p, weight_q);

        const std::size_t tasks = std::size_t{1} << depth;
        std::vector<double> partial(tasks);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t t = next++; t < tasks; t = next++) {
                double a = weight_p, b = weight_q;
                for (std::size_t i = 0; i < depth; ++i) {
                    const bool one = (t >> (depth - 1 - i)) & 1u;
                    a *= one ? p_[i] : 1.0 - p_[i];
                    b *= one ? q_[i] : 1.0 - q_[i];
                }
                partial[t] = walk(depth, a, b);
            }
        };
        const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, tasks));
        std::vector<std::jthread> pool;
        pool.reserve(threads - 1);
        for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
        worker();
        pool.clear();

        for (std::size_t width = tasks; width > 1; width /= 2)
            for (std::size_t k = 0; k < width / 2; ++k)
                partial[k] = combine_(partial[2 * k], partial[2 * k + 1]);
        return partial[0];
    }

private:
    double walk(std::size_t i, double a, double b) const {
        if (i == split_) {
            double acc = leaf_(a * table_p_[0], b * table_q_[0]);
            for (std::size_t j = 1; j < table_p_.size(); ++j)
                acc = combine_(acc, leaf_(a * table_p_[j], b * table_q_[j]));
            return acc;
        }
        const double lo = walk(i + 1, a * (1.0 - p_[i]), b * (1.0 - q_[i]));
        const double hi = walk(i + 1, a * p_[i], b * q_[i]);
        return combine_(lo, hi);
    }

    const std::vector<double>& p_;
    const std::vector<double>& q_;
    Leaf leaf_;
    Combine combine_;
    std::size_t split_ = 0;
    std::vector<double> table_p_;
    std::vector<double> table_q_;
};

template <class Leaf, class Combine>
double reduce_hypercube(const ProductBernoulli& P, const ProductBernoulli& Q, Leaf leaf,
                        Combine combine, unsigned workers, double weight_p = 1.0,
                        double weight_q = 1.0) {
    return HypercubeReducer<Leaf, Combine>(P, Q, leaf, combine)
        .run(resolve_workers(workers), weight_p, weight_q);
}

constexpr auto kMin = [](double a, double b) { return std::min(a, b); };

constexpr auto kSum = [](double x, double y) { return x + y; };

void check_enumerable(const ProductBernoulli& P, const ProductBernoulli& Q,
                      const EnumerationOptions& opts) {
    require_same_dimension(P, Q);
    if (P.size() > opts.n_max) throw EnumerationLimitError(P.size(), opts.n_max);
}

}  // namespace

EnumerationLimitError::EnumerationLimitError(std::size_t n, std::size_t n_max)
    : std::length_error(limit_message(n, n_max)), n_(n), n_max_(n_max) {}

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

double min_mass(const ProductBernoulli& P, const ProductBernoulli& Q,
                const EnumerationOptions& opts) {
    check_enumerable(P, Q, opts);
    return reduce_hypercube(P, Q, kMin, kSum, opts.workers);
}

double tv_distance(const ProductBernoulli& P, const ProductBernoulli& Q,
                   const EnumerationOptions& opts) {
    check_enumerable(P, Q, opts);
    return 0.5 * reduce_hypercube(
                     P, Q, [](double a, double b) { return std::abs(a - b); }, kSum,
                     opts.workers);
}

double bhattacharyya(const ProductBernoulli& P, const ProductBernoulli& Q) {
    require_same_dimension(P, Q);
    double prod = 1.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const double p = P[i], q = Q[i];
        prod *= std::sqrt(p * q) + std::sqrt((1.0 - p) * (1.0 - q));
    }
    return prod;
}

AffinityResult affinity(const ProductBernoulli& P, const ProductBernoulli& Q,
                        const EnumerationOptions& opts) {
    AffinityResult r;
    r.min_mass = min_mass(P, Q, opts);
    r.tv = tv_distance(P, Q, opts);
    r.bhattacharyya = bhattacharyya(P, Q);
    r.n = P.size();
    r.method = AffinityMethod::enumeration;
    return r;
}

double optimal_error(const ExpertPanel& panel, const EnumerationOptions& opts) {
    const ProductBernoulli mu = panel.positive_law();
    const ProductBernoulli nu = panel.negative_law();
    check_enumerable(mu, nu, opts);
    if (panel.p_y() == 0.5) return 0.5 * min_mass(mu, nu, opts);
    return reduce_hypercube(mu, nu, kMin, kSum, opts.workers, panel.p_y(), 1.0 - panel.p_y());
}

std::pair<double, double> complement_symmetry_check(const ProductBernoulli& psi,
                                                    const ProductBernoulli& eta, NormOrder r) {
    require_same_dimension(psi, eta);
    constexpr std::size_t kLimit = 12;
    if (psi.size() > kLimit) throw EnumerationLimitError(psi.size(), kLimit);

    auto norm = [r](const ProductBernoulli& A, const ProductBernoulli& B) {
        switch (r) {
            case NormOrder::one:
                return reduce_hypercube(
                    A, B, [](double a, double b) { return std::abs(a - b); }, kSum, 1);
            case NormOrder::two:
                return std::sqrt(reduce_hypercube(
                    A, B, [](double a, double b) { return (a - b) * (a - b); }, kSum, 1));
            case NormOrder::infinity:
                return reduce_hypercube(
                    A, B, [](double a, double b) { return std::abs(a - b); },
                    [](double x, double y) { return std::max(x, y); }, 1);
        }
        throw std::invalid_argument("unknown norm order");
    };
    return {norm(psi, eta.complement()), norm(psi.complement(), eta)};
}

ProductBernoulli tensor(const ProductBernoulli& P, const ProductBernoulli& Q) {
    std::vector<double> p = P.p();
    p.insert(p.end(), Q.p().begin(), Q.p().end());
    return ProductBernoulli(std::move(p));
}

double tensorization_gap(const ProductBernoulli& P, const ProductBernoulli& P_alt,
                         const ProductBernoulli& Q, const ProductBernoulli& Q_alt,
                         const EnumerationOptions& opts) {
    require_same_dimension(P, P_alt);
    require_same_dimension(Q, Q_alt);
    const std::size_t joint = P.size() + Q.size();
    if (joint > opts.n_max) throw EnumerationLimitError(joint, opts.n_max);
    const double whole = min_mass(tensor(P, Q), tensor(P_alt, Q_alt), opts);
    return whole - min_mass(P, P_alt, opts) * min_mass(Q, Q_alt, opts);
}

}  // namespace nbagg
