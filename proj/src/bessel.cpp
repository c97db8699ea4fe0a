#include "pwinterp/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pwinterp/error.hpp"

namespace pwinterp {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// K1(x) = 1/x + (x/2) sum_k c_k [ln(x/2) - (psi(k+1) + psi(k+2)) / 2],
// c_k = (x^2/4)^k / (k! (k+1)!).
double k1_series(double x) {
    const double t = 0.25 * x * x;
    const double log_half = std::log(0.5 * x);
    const double gamma = std::numbers::egamma;
    double c = 1.0;
    double harmonic = 0.0;  // H_k
    double sum = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double harmonic_next = harmonic + 1.0 / (k + 1);
        const double psi_sum = -2.0 * gamma + harmonic + harmonic_next;
        const double term = c * (log_half - 0.5 * psi_sum);
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum) && k > 1) break;
        c *= t / ((k + 1.0) * (k + 2.0));
        harmonic = harmonic_next;
    }
    return 1.0 / x + 0.5 * x * sum;
}

// Steed's method for K_0, K_1 (continued fraction CF2 with the Temme
// normalisation sum), nu = 0 branch.
double k1_continued_fraction(double x) {
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) {
            h *= a1;
            const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
            return k0 * (x + 0.5 - h) / x;
        }
    }
    throw NumericalError("bessel_k1: continued fraction failed to converge at r = " + std::to_string(x));
}

double k1_asymptotic(double x) {
    constexpr double mu = 4.0;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum)) break;
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * sum;
}

}  // namespace

double bessel_k1(double r) {
    if (!(r > 0.0)) throw DomainError("bessel_k1: argument must be positive, got " + std::to_string(r));
    if (std::isinf(r)) return 0.0;
    if (r < 2.0) return k1_series(r);
    if (r < 25.0) return k1_continued_fraction(r);
    return k1_asymptotic(r);
}

double macdonald_lower_bound(double r) {
    return std::sqrt(std::numbers::pi / 2.0) / std::sqrt(r) * std::exp(-r);
}

double macdonald_upper_bound(double r, double nu) {
    return std::sqrt(2.0 * std::numbers::pi) / std::sqrt(r) * std::exp(-r + nu * nu / (2.0 * r));
}

double macdonald_upper_bound_decaying(double r, double nu) {
    return std::sqrt(2.0 * std::numbers::pi) / std::sqrt(r) * std::exp(-r - nu * nu / (2.0 * r));
}

}  // namespace pwinterp
