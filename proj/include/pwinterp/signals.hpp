#pragma once

#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pwinterp/sequences.hpp"

namespace pwinterp {

namespace detail {
class SignalModel;
}

/// Polynomial sum_n coefficients[n] xi^n on [lower, upper] (absolute powers of xi).
struct SpectrumPiece {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> coefficients;

    double operator()(double xi) const;
};

/// A Paley-Wiener function: spectrum supported in [-pi, pi] and the
/// corresponding spatial values f(x) = (2 pi)^{-1/2} int fhat(xi) e^{i x xi} dxi.
/// Cheap to copy; the underlying model is shared and immutable.
class PWSignal {
public:
    explicit PWSignal(std::shared_ptr<const detail::SignalModel> model);

    /// fhat(xi); zero for |xi| > pi.
    std::complex<double> spectrum(double xi) const;
    /// f(x).
    std::complex<double> value(double x) const;
    /// Re f(x); throws DomainError for signals that are not real-valued.
    double real_value(double x) const;
    /// ||f||_{L2(R)} = ||fhat||_{L2[-pi,pi]}.
    double l2_norm() const;
    /// Sorted points in [-pi, pi] where the spectrum may be non-smooth,
    /// always including both ends.
    std::vector<double> breakpoints() const;
    bool is_real() const;
    std::string description() const;

private:
    std::shared_ptr<const detail::SignalModel> model_;
};

/// f(x) = sinc(b (x - shift)) with sinc(t) = sin(pi t)/(pi t), 0 < b <= 1.
/// Spectrum (2 pi)^{-1/2} b^{-1} e^{-i shift xi} on |xi| <= b pi.
PWSignal sinc_signal(double shift = 0.0, double bandwidth = 1.0);

/// The zero function.
PWSignal zero_signal();

/// Piecewise-polynomial spectrum. Pieces must lie in [-pi, pi] and not
/// overlap; spatial values come from inversion quadrature with panel doubling
/// to `tolerance`; the norm is integrated exactly.
PWSignal spectral_signal(std::vector<SpectrumPiece> pieces, double tolerance = 1e-12);

/// Spectrum 1 - |xi| / pi (Fejer-type kernel in space).
PWSignal triangle_signal();

/// Unit spectrum on pi - width <= |xi| <= pi: energy concentrated at the band edge.
PWSignal edge_signal(double width);

/// sum_i weight_i * signal_i.
PWSignal combine(std::vector<std::pair<double, PWSignal>> terms);

struct SampleSet {
    std::vector<double> values;
    double l2_mass = 0.0;  ///< sum_j |f(x_j)|^2
    double ceiling = 0.0;  ///< riesz upper * ||f||^2
    bool within_ceiling = false;
};

/// (f(x_j))_j with the sampling-energy check sum |f(x_j)|^2 <= upper ||f||^2,
/// where `upper` is the window's measured Riesz upper bound.
SampleSet sample(const PWSignal& signal, const NodeSequence& nodes);
SampleSet sample(const PWSignal& signal, const NodeSequence& nodes, const RieszBounds& bounds);

}  // namespace pwinterp
