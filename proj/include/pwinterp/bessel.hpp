#pragma once

namespace pwinterp {

/// Macdonald function K1(r), r > 0, to ~1e-15 relative accuracy.
///
/// Three regimes: the ascending series for r < 2, Steed's continued fraction
/// for 2 <= r < 25, and the Hankel asymptotic expansion for r >= 25, where its
/// optimally truncated error is below e^{-2r}. Throws DomainError for r <= 0 or NaN.
double bessel_k1(double r);

/// Lower sandwich bound sqrt(pi/2) r^{-1/2} e^{-r} <= K_nu(r), valid for all
/// r > 0 and |nu| >= 1/2.
double macdonald_lower_bound(double r);

/// Upper sandwich bound sqrt(2 pi) r^{-1/2} e^{-r} e^{nu^2 / (2r)} >= K_nu(r),
/// valid for all r > 0.
double macdonald_upper_bound(double r, double nu = 1.0);

/// The variant with the decaying factor e^{-nu^2/(2r)}. For nu = 1 it bounds K1
/// from above only for r >= kDecayingBoundThreshold; below that the e^{-1/(2r)}
/// factor collapses faster than 1/r grows.
double macdonald_upper_bound_decaying(double r, double nu = 1.0);

/// Smallest r (to 1e-3) from which macdonald_upper_bound_decaying(r, 1) >= K1(r)
/// holds on the tested range [1e-4, 1e3].
inline constexpr double kDecayingBoundThreshold = 1.117;

}  // namespace pwinterp
