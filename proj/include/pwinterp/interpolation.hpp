#pragma once

#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "pwinterp/kernels.hpp"
#include "pwinterp/sequences.hpp"

namespace pwinterp {

/// Interpolation matrix G[k][j] = phi_alpha(x_k - x_j).
struct GramMatrix {
    Eigen::MatrixXd entries;
    std::string kernel;
    double alpha = 0.0;

    Eigen::Index dimension() const { return entries.rows(); }
};

/// Builds G from |x_k - x_j| so symmetry is exact; repeated distances are
/// evaluated once. Kernel failures are rethrown with the entry indices.
GramMatrix assemble_gram(std::span<const double> points, const KernelFamily& kernel, double alpha);
GramMatrix assemble_gram(const NodeSequence& nodes, const KernelFamily& kernel, double alpha);

struct Spectrum {
    double min = 0.0;
    double max = 0.0;
    double condition() const { return min > 0.0 ? max / min : std::numeric_limits<double>::infinity(); }
};

/// Extreme eigenvalues of G (symmetric QR).
Spectrum extreme_eigenvalues(const GramMatrix& gram);

struct SolveOptions {
    /// Required ||G a - f||_inf / ||f||_inf after refinement.
    double residual_tolerance = 1e-10;
    /// Condition numbers above this flag the solve (it still proceeds).
    double condition_limit = 1e12;
    int max_refinements = 30;
};

struct SolveResult {
    /// Held in extended precision: refinement resolves them beyond double.
    std::vector<long double> coefficients;
    double residual = 0.0;  ///< ||G a - f||_inf, evaluated in long double
    int refinements = 0;
    double condition_estimate = 0.0;
    bool ill_conditioned = false;
};

/// Cholesky factorisation with a relative pivot floor, followed by
/// mixed-precision iterative refinement (residuals accumulated in long double)
/// until the residual contract holds.
///
/// Throws FactorizationError (carrying the pivot index) when G is not
/// numerically positive definite, NumericalError when refinement stalls above
/// the tolerance, and DomainError on a dimension mismatch.
SolveResult solve_coefficients(const GramMatrix& gram, std::span<const double> samples, const SolveOptions& options = {});

/// I_alpha f(x) = sum_j a_j phi_alpha(x - x_j).
class InterpolantModel {
public:
    InterpolantModel(std::vector<double> centers, std::vector<long double> coefficients, KernelHandle kernel,
                     double alpha, double residual = 0.0, double condition_estimate = 0.0, bool ill_conditioned = false);

    std::span<const double> centers() const noexcept { return centers_; }
    std::span<const long double> coefficients() const noexcept { return coefficients_; }
    const KernelHandle& kernel() const noexcept { return kernel_; }
    double alpha() const noexcept { return alpha_; }
    double solve_residual() const noexcept { return residual_; }
    double condition_estimate() const noexcept { return condition_; }
    bool ill_conditioned() const noexcept { return ill_conditioned_; }

    /// sqrt(sum a_j^2).
    double coefficient_norm() const;

private:
    std::vector<double> centers_;
    std::vector<long double> coefficients_;
    KernelHandle kernel_;
    double alpha_;
    double residual_;
    double condition_;
    bool ill_conditioned_;
};

/// assemble_gram + solve_coefficients, packaged as a model.
InterpolantModel interpolate(const NodeSequence& nodes, KernelHandle kernel, double alpha,
                             std::span<const double> samples, const SolveOptions& options = {});
InterpolantModel interpolate(std::span<const double> points, KernelHandle kernel, double alpha,
                             std::span<const double> samples, const SolveOptions& options = {});

/// Exact finite sum over the window, accumulated in long double.
double evaluate_interpolant(const InterpolantModel& model, double x);

/// Batch evaluation; kernel values are shared across repeated distances.
std::vector<double> evaluate_interpolant(const InterpolantModel& model, std::span<const double> xs);

/// psi_alpha(xi) = sum_j a_j e^{-i x_j xi}; the interpolant's transform is
/// kernel.transform(xi) * psi_alpha(xi).
std::complex<double> coefficient_symbol(const InterpolantModel& model, double xi);

/// {"kernel", "alpha", "nodes_ref", "coefficients", "coefficients_lo", "residual", ...}.
/// coefficients_lo carries the long-double remainder so the pair round-trips.
nlohmann::json to_json(const InterpolantModel& model, const std::string& nodes_ref);
InterpolantModel interpolant_from_json(const nlohmann::json& doc, const NodeSequence& nodes);

}  // namespace pwinterp
