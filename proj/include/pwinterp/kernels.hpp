#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace pwinterp {

/// Admissible parameter set of a family: [minimum, inf) or (minimum, inf),
/// optionally restricted to integers.
struct ParameterDomain {
    double minimum = 0.0;
    bool minimum_inclusive = false;
    bool integer_only = false;

    bool contains(double alpha) const;
};

/// A one-parameter family of interpolators phi_alpha together with the
/// transform-side data that the recovery hypotheses are stated in.
///
/// Transforms follow ghat(xi) = (2 pi)^{-1/2} int g(x) e^{-i x xi} dx.
/// Implementations are immutable; every member is safe to call concurrently.
class KernelFamily {
public:
    virtual ~KernelFamily() = default;

    virtual std::string name() const = 0;
    virtual ParameterDomain parameter_domain() const = 0;

    /// phi_alpha(x); even in x.
    virtual double spatial(double x, double alpha) const = 0;
    /// phihat_alpha(xi); even in xi.
    virtual double transform(double xi, double alpha) const = 0;
    /// m_alpha = inf over |xi| <= pi of the transform.
    virtual double lower_bound(double alpha) const = 0;
    /// An upper bound for sup over |xi| <= pi of |transform(xi + 2 pi j)|.
    /// Exact where a closed form exists; j = 0 gives the band sup.
    virtual double tail_bound(long j, double alpha) const = 0;

    /// Throws DomainError when alpha is outside parameter_domain().
    void require_parameter(double alpha) const;
};

using KernelHandle = std::shared_ptr<const KernelFamily>;

// --- Poisson kernels sqrt(2/pi) alpha / (alpha^2 + x^2), alpha >= 1 ---------

double poisson_spatial(double x, double alpha);
double poisson_transform(double xi, double alpha);
double poisson_lower_bound(double alpha);
double poisson_tail_bound(long j, double alpha);

KernelHandle poisson_family();

// --- Multiquadric differences, k = 1, 2, 3, ... ------------------------------

/// uhat_k(xi) = [2 (1 - cos xi) / xi^2]^k [|xi| K1(|xi|)]^k, with uhat_k(0) = 1.
double mq_transform(double xi, int k);

/// The piecewise band bound as published:
///   2^{3k/2} pi^{-k} (2|j|-1)^{-3k/2} e^{-(2|j|-1) k pi}   for |j| > 1,
///   uhat_k(pi) for |j| = 1, and 1 for j = 0.
/// For |j| > 1 this is the leading asymptotic of the band sup and sits
/// slightly *below* it (it uses the lower K1 bound), so it is not used for
/// certification; see mq_certified_tail_bound.
double mq_tail_bound(long j, int k);

/// Sound replacement for |j| > 1: on the band [(2|j|-1) pi, (2|j|+1) pi],
/// 2 (1 - cos xi) / xi^2 <= 4 / r^2 and xi K1(xi) is decreasing, so
///   sup <= [4 / r * sqrt(2 pi) r^{-1/2} e^{-r} e^{1/(2r)}]^k,  r = (2|j|-1) pi,
/// using the upper Macdonald bound valid for every r > 0. Agrees with
/// mq_tail_bound for |j| <= 1.
double mq_certified_tail_bound(long j, int k);

/// Spatial kernel u_k(x) = (2 pi)^{-1/2} int uhat_k(xi) e^{i x xi} dxi.
double mq_spatial(double x, int k);

/// Transform-defined multiquadric family. Spatial values come from
/// composite Gauss-Legendre quadrature on [0, R_k] with dyadic grading toward
/// xi = 0 (where uhat_k has a xi^2 log xi term) and panel widths refined
/// level by level until two levels agree.
class MultiquadricFamily final : public KernelFamily {
public:
    static constexpr int kMaxLevel = 9;

    struct SpatialEstimate {
        double value = 0.0;
        double error = 0.0;  ///< difference between the last two levels
        int level = 0;
    };

    MultiquadricFamily();

    std::string name() const override { return "multiquadric"; }
    ParameterDomain parameter_domain() const override { return {1.0, true, true}; }
    double spatial(double x, double k) const override;
    double transform(double xi, double k) const override;
    double lower_bound(double k) const override;
    double tail_bound(long j, double k) const override;

    /// Spatial value with its convergence diagnostics. Throws NumericalError
    /// when the finest level still disagrees with its predecessor.
    SpatialEstimate spatial_estimate(double x, int k) const;

    /// Truncation point R_k of the transform integral.
    double cutoff(int k) const;

private:
    struct Level {
        std::vector<double> xi;
        std::vector<double> weight;
        std::vector<double> base;  ///< uhat_1 at each node
    };

    const Level& level(int l) const;
    double sum_level(const Level& lv, double x, int k) const;

    double absolute_tolerance_ = 1e-13;
    mutable std::array<std::once_flag, kMaxLevel + 1> built_;
    mutable std::array<Level, kMaxLevel + 1> levels_;
};

KernelHandle multiquadric_family();

// --- Gaussian: phi_alpha(x) = e^{-x^2/(4 alpha)} / sqrt(2 alpha) --------------
//
// phihat_alpha(xi) = e^{-alpha xi^2}; the transform narrows relative to m_alpha
// as alpha grows. Hypothesis compliance is left to the certifier.

double gaussian_spatial(double x, double alpha);
double gaussian_transform(double xi, double alpha);

KernelHandle gaussian_family();

// --- Cosine-modulated Poisson: phihat_alpha(xi) = e^{-alpha |xi|} cos(xi) ------
//
// A deliberate counterexample: its transform is negative on pi/2 < |xi| <= pi,
// so the band floor is negative and the positivity hypothesis fails.

KernelHandle cosine_modulated_poisson_family();

/// Look up a family by name(); throws DomainError for unknown names.
KernelHandle make_family(std::string_view name);

/// Names accepted by make_family.
std::vector<std::string> family_names();

}  // namespace pwinterp
