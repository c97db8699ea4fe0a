#include "pwinterp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pwinterp/error.hpp"

namespace pwinterp::quadrature {

Rule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    const auto legendre = [n](double x, double& p_prev) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        p_prev = p0;
        return p1;
    };
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p_prev = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            const double p = legendre(x, p_prev);
            const double dp = n * (x * p - p_prev) / (x * x - 1.0);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double p = legendre(x, p_prev);
        const double dp = n * (x * p - p_prev) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const Rule& default_rule() {
    static const Rule rule = gauss_legendre(20);
    return rule;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        const Rule& rule) {
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
        total += 0.5 * h * s;
    }
    return total;
}

Estimate integrate_doubling(const std::function<double(double)>& f, double a, double b, double abs_tol,
                            double rel_tol, int max_panels) {
    if (a == b) return {};
    int panels = 1;
    double previous = integrate_panels(f, a, b, panels);
    while (panels < max_panels) {
        panels *= 2;
        const double current = integrate_panels(f, a, b, panels);
        const double diff = std::abs(current - previous);
        if (!std::isfinite(current)) break;
        if (diff <= std::max(abs_tol, rel_tol * std::abs(current))) return {current, diff, panels};
        previous = current;
    }
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge with " << panels << " panels";
    throw NumericalError(msg.str());
}

Estimate integrate_piecewise(const std::function<double(double)>& f, std::span<const double> breaks,
                             double abs_tol, double rel_tol, int max_panels) {
    Estimate total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const Estimate part = integrate_doubling(f, breaks[i], breaks[i + 1], abs_tol, rel_tol, max_panels);
        total.value += part.value;
        total.error += part.error;
        total.panels += part.panels;
    }
    return total;
}

}  // namespace pwinterp::quadrature
