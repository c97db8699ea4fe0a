#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pwinterp::quadrature {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on the three-term recurrence).
Rule gauss_legendre(int n);

/// The 20-point rule used throughout the library; built once.
const Rule& default_rule();

/// Composite rule: `panels` equal panels on [a, b], each with `rule`.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, const Rule& rule = default_rule());

struct Estimate {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

/// Composite Gauss-Legendre on [a, b], doubling the panel count until two
/// successive values agree to max(abs_tol, rel_tol * |value|).
/// Throws NumericalError when `max_panels` is reached first.
Estimate integrate_doubling(const std::function<double(double)>& f, double a, double b,
                            double abs_tol, double rel_tol, int max_panels = 1 << 14);

/// Same, summed over consecutive intervals [b_i, b_{i+1}] of `breaks`.
Estimate integrate_piecewise(const std::function<double(double)>& f, std::span<const double> breaks,
                             double abs_tol, double rel_tol, int max_panels = 1 << 14);

}  // namespace pwinterp::quadrature
