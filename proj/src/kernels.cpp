#include "pwinterp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pwinterp/bessel.hpp"
#include "pwinterp/error.hpp"
#include "pwinterp/quadrature.hpp"

namespace pwinterp {
namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

std::string describe(double alpha) {
    std::ostringstream os;
    os.precision(17);
    os << alpha;
    return os.str();
}

int as_order(double k) {
    if (!(k >= 1.0) || k != std::floor(k) || k > 1e6)
        throw DomainError("multiquadric order must be a positive integer, got " + describe(k));
    return static_cast<int>(k);
}

// [2 (1 - cos t) / t^2] * t K1(t) for t >= 0, the k = 1 transform.
double mq_base(double t) {
    t = std::abs(t);
    if (t < 1e-150) return 1.0;
    const double half = 0.5 * t;
    const double s = std::sin(half) / half;
    return s * s * t * bessel_k1(t);
}

double int_power(double v, int k) {
    double out = v;
    for (int p = 1; p < k; ++p) out *= v;
    return out;
}

class PoissonFamily final : public KernelFamily {
public:
    std::string name() const override { return "poisson"; }
    ParameterDomain parameter_domain() const override { return {1.0, true, false}; }
    double spatial(double x, double alpha) const override { return poisson_spatial(x, alpha); }
    double transform(double xi, double alpha) const override { return poisson_transform(xi, alpha); }
    double lower_bound(double alpha) const override { return poisson_lower_bound(alpha); }
    double tail_bound(long j, double alpha) const override { return poisson_tail_bound(j, alpha); }
};

class GaussianFamily final : public KernelFamily {
public:
    std::string name() const override { return "gaussian"; }
    ParameterDomain parameter_domain() const override { return {0.0, false, false}; }
    double spatial(double x, double alpha) const override { return gaussian_spatial(x, alpha); }
    double transform(double xi, double alpha) const override { return gaussian_transform(xi, alpha); }
    double lower_bound(double alpha) const override {
        require_parameter(alpha);
        return std::exp(-alpha * kPi * kPi);
    }
    double tail_bound(long j, double alpha) const override {
        require_parameter(alpha);
        if (j == 0) return 1.0;
        const double r = (2.0 * std::abs(static_cast<double>(j)) - 1.0) * kPi;
        return std::exp(-alpha * r * r);
    }
};

class CosineModulatedPoissonFamily final : public KernelFamily {
public:
    std::string name() const override { return "cosine_modulated_poisson"; }
    ParameterDomain parameter_domain() const override { return {0.0, false, false}; }
    double spatial(double x, double alpha) const override {
        require_parameter(alpha);
        const double c = std::sqrt(2.0 / kPi) * alpha;
        const double a2 = alpha * alpha;
        const double left = x - 1.0;
        const double right = x + 1.0;
        return 0.5 * (c / (a2 + left * left) + c / (a2 + right * right));
    }
    double transform(double xi, double alpha) const override {
        require_parameter(alpha);
        const double t = std::abs(xi);
        return std::exp(-alpha * t) * std::cos(t);
    }
    // Minimum on [0, pi] sits where tan(xi) = -alpha.
    double lower_bound(double alpha) const override {
        require_parameter(alpha);
        const double xi = kPi - std::atan(alpha);
        return std::exp(-alpha * xi) * std::cos(xi);
    }
    double tail_bound(long j, double alpha) const override {
        require_parameter(alpha);
        if (j == 0) return 1.0;
        return std::exp(-alpha * kPi * (2.0 * std::abs(static_cast<double>(j)) - 1.0));
    }
};

}  // namespace

bool ParameterDomain::contains(double alpha) const {
    if (!std::isfinite(alpha)) return false;
    if (minimum_inclusive ? alpha < minimum : alpha <= minimum) return false;
    if (integer_only && alpha != std::floor(alpha)) return false;
    return true;
}

void KernelFamily::require_parameter(double alpha) const {
    if (!parameter_domain().contains(alpha))
        throw DomainError(name() + ": parameter " + describe(alpha) + " outside the family's domain");
}

// --- Poisson ------------------------------------------------------------------

double poisson_spatial(double x, double alpha) {
    if (!(alpha >= 1.0)) throw DomainError("poisson: parameter must be >= 1, got " + describe(alpha));
    return std::sqrt(2.0 / kPi) * alpha / (alpha * alpha + x * x);
}

double poisson_transform(double xi, double alpha) {
    if (!(alpha >= 1.0)) throw DomainError("poisson: parameter must be >= 1, got " + describe(alpha));
    return std::exp(-alpha * std::abs(xi));
}

double poisson_lower_bound(double alpha) { return poisson_transform(kPi, alpha); }

double poisson_tail_bound(long j, double alpha) {
    if (j == 0) return poisson_transform(0.0, alpha);
    return poisson_transform(kPi * (2.0 * std::abs(static_cast<double>(j)) - 1.0), alpha);
}

KernelHandle poisson_family() {
    static const KernelHandle family = std::make_shared<const PoissonFamily>();
    return family;
}

// --- Multiquadric ---------------------------------------------------------------

double mq_transform(double xi, int k) {
    if (k < 1) throw DomainError("multiquadric order must be >= 1, got " + std::to_string(k));
    return int_power(mq_base(xi), k);
}

double mq_tail_bound(long j, int k) {
    if (k < 1) throw DomainError("multiquadric order must be >= 1, got " + std::to_string(k));
    const long aj = std::abs(j);
    if (aj == 0) return 1.0;
    if (aj == 1) return mq_transform(kPi, k);
    const double n = 2.0 * aj - 1.0;
    return std::pow(2.0, 1.5 * k) * std::pow(kPi, -k) * std::pow(n, -1.5 * k) * std::exp(-n * k * kPi);
}

double mq_certified_tail_bound(long j, int k) {
    if (std::abs(j) <= 1) return mq_tail_bound(j, k);
    const double r = (2.0 * std::abs(static_cast<double>(j)) - 1.0) * kPi;
    return int_power(4.0 / r * macdonald_upper_bound(r, 1.0), k);
}

double mq_spatial(double x, int k) {
    static const MultiquadricFamily family;
    return family.spatial(x, k);
}

MultiquadricFamily::MultiquadricFamily() = default;

double MultiquadricFamily::cutoff(int k) const {
    // int_R^inf uhat_k <= [4 sqrt(2 pi) R^{-3/2} e^{1/(2R)}]^k e^{-kR} / k
    for (double r = 4.0;; r += 1.0) {
        const double head = 4.0 * std::sqrt(2.0 * kPi) * std::pow(r, -1.5) * std::exp(0.5 / r);
        const double tail = 2.0 * kInvSqrt2Pi * std::pow(head, k) * std::exp(-k * r) / k;
        if (tail < 1e-14 || r >= 64.0) return r;
    }
}

const MultiquadricFamily::Level& MultiquadricFamily::level(int l) const {
    std::call_once(built_[l], [this, l] {
        const double h = std::ldexp(1.0, -l);
        const double reach = cutoff(1);
        std::vector<double> edges{0.0};
        for (int m = 48; m >= 0; --m) edges.push_back(std::ldexp(h, -m));
        const long uniform = std::lround(reach / h);
        for (long p = 2; p <= uniform; ++p) edges.push_back(p * h);

        const auto& rule = quadrature::default_rule();
        Level& lv = levels_[l];
        const std::size_t count = (edges.size() - 1) * rule.nodes.size();
        lv.xi.reserve(count);
        lv.weight.reserve(count);
        lv.base.reserve(count);
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double mid = 0.5 * (edges[p] + edges[p + 1]);
            const double half = 0.5 * (edges[p + 1] - edges[p]);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double t = mid + half * rule.nodes[i];
                lv.xi.push_back(t);
                lv.weight.push_back(half * rule.weights[i]);
                lv.base.push_back(mq_base(t));
            }
        }
    });
    return levels_[l];
}

double MultiquadricFamily::sum_level(const Level& lv, double x, int k) const {
    const auto end = std::upper_bound(lv.xi.begin(), lv.xi.end(), cutoff(k));
    const auto n = static_cast<std::size_t>(end - lv.xi.begin());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += lv.weight[i] * int_power(lv.base[i], k) * std::cos(x * lv.xi[i]);
    return 2.0 * kInvSqrt2Pi * sum;
}

MultiquadricFamily::SpatialEstimate MultiquadricFamily::spatial_estimate(double x, int k) const {
    if (k < 1) throw DomainError("multiquadric order must be >= 1, got " + std::to_string(k));
    x = std::abs(x);
    // phase per panel at most 8 radians for the 20-point rule
    int start = 0;
    while (start < kMaxLevel && std::ldexp(1.0, -start) * x > 8.0) ++start;
    if (start >= kMaxLevel)
        throw NumericalError("mq_spatial: |x| = " + describe(x) + " beyond the finest quadrature level");
    double previous = sum_level(level(start), x, k);
    for (int l = start + 1; l <= kMaxLevel; ++l) {
        const double current = sum_level(level(l), x, k);
        const double diff = std::abs(current - previous);
        if (diff <= absolute_tolerance_) return {current, diff, l};
        previous = current;
    }
    throw NumericalError("mq_spatial: quadrature did not converge at x = " + describe(x) +
                         ", k = " + std::to_string(k));
}

double MultiquadricFamily::spatial(double x, double k) const { return spatial_estimate(x, as_order(k)).value; }

double MultiquadricFamily::transform(double xi, double k) const { return mq_transform(xi, as_order(k)); }

double MultiquadricFamily::lower_bound(double k) const { return mq_transform(kPi, as_order(k)); }

double MultiquadricFamily::tail_bound(long j, double k) const { return mq_certified_tail_bound(j, as_order(k)); }

KernelHandle multiquadric_family() {
    static const KernelHandle family = std::make_shared<const MultiquadricFamily>();
    return family;
}

// --- Gaussian -------------------------------------------------------------------

double gaussian_spatial(double x, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("gaussian: parameter must be > 0, got " + describe(alpha));
    return std::exp(-x * x / (4.0 * alpha)) / std::sqrt(2.0 * alpha);
}

double gaussian_transform(double xi, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("gaussian: parameter must be > 0, got " + describe(alpha));
    return std::exp(-alpha * xi * xi);
}

KernelHandle gaussian_family() {
    static const KernelHandle family = std::make_shared<const GaussianFamily>();
    return family;
}

KernelHandle cosine_modulated_poisson_family() {
    static const KernelHandle family = std::make_shared<const CosineModulatedPoissonFamily>();
    return family;
}

KernelHandle make_family(std::string_view name) {
    if (name == "poisson") return poisson_family();
    if (name == "multiquadric") return multiquadric_family();
    if (name == "gaussian") return gaussian_family();
    if (name == "cosine_modulated_poisson") return cosine_modulated_poisson_family();
    throw DomainError("unknown kernel family '" + std::string(name) + "'");
}

std::vector<std::string> family_names() {
    return {"poisson", "multiquadric", "gaussian", "cosine_modulated_poisson"};
}

}  // namespace pwinterp
