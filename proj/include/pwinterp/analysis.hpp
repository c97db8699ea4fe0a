#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pwinterp/interpolation.hpp"
#include "pwinterp/kernels.hpp"
#include "pwinterp/sequences.hpp"
#include "pwinterp/signals.hpp"

namespace pwinterp {

enum class Verdict { Pass, Fail, Indeterminate };

std::string_view to_string(Verdict v);

/// Fail dominates Indeterminate, which dominates Pass.
Verdict combine(Verdict a, Verdict b);

// --- grids ---------------------------------------------------------------------

/// n midpoints -pi + (i + 1/2) 2 pi / n; never touches +-pi.
std::vector<double> interior_xi_grid(int n);

/// n points spanning [-pi, pi] including both ends.
std::vector<double> closed_xi_grid(int n);

/// x = k * step for |x| <= fraction * N, N the window half-width.
std::vector<double> probe_grid(const NodeSequence& nodes, double step, double fraction = 1.0);

// --- error bound ---------------------------------------------------------------

/// ||T_alpha fhat||_{L2[-pi,pi]} with T_alpha g = (m_alpha / phihat_alpha) g,
/// by piecewise quadrature split at the signal's breakpoints and at 0.
double t_alpha_bound(const PWSignal& signal, const KernelFamily& kernel, double alpha);

/// max |f(x) - I f(x)| over `probe`.
double sup_error(const PWSignal& signal, const InterpolantModel& model, std::span<const double> probe);

// --- tail sums -----------------------------------------------------------------

struct TailSum {
    double sum = 0.0;            ///< sum over 0 < |j| <= terms of tail_bound(j)
    long terms = 0;              ///< J
    double first_omitted = 0.0;  ///< tail_bound(J+1) + tail_bound(-J-1)
    bool converged = false;      ///< first_omitted < rel_tol * sum before J_max
};

/// Extends J until the first omitted pair is below rel_tol of the partial sum.
TailSum tail_sum(const KernelFamily& kernel, double alpha, long j_max = 100000, double rel_tol = 1e-14);

// --- Gram brackets -------------------------------------------------------------

/// One-sided eigenvalue brackets of the Gram matrix on a window with measured
/// Riesz bounds:
///   lambda_min >= sqrt(2 pi) m_alpha lower,
///   lambda_max <= sqrt(2 pi) (M_0 + sum_{j != 0} M_j) upper.
struct GramBrackets {
    double floor = 0.0;
    double ceiling = 0.0;
};

GramBrackets gram_brackets(const KernelFamily& kernel, double alpha, const RieszBounds& riesz);

// --- certification -------------------------------------------------------------

struct CertifyOptions {
    long j_max = 100000;
    double tail_rel_tol = 1e-14;
    /// Points of the closed grid used for the floor and tail-certificate checks.
    int grid_points = 1000;
    /// Bands 1 <= |j| <= certify_bands are checked against tail_bound on the grid.
    int certify_bands = 40;
    /// Cells of the interior grid for the H3 ratios.
    int h3_points = 1000;
    double h2_limit = 10.0;
    double h3_threshold = 0.5;
};

struct AlphaRecord {
    double alpha = 0.0;
    double m_alpha = 0.0;
    double grid_floor = 0.0;        ///< min of the transform over the closed grid
    double negative_mass = 0.0;     ///< most negative transform value seen on any checked band (0 if none)
    double core_integral = 0.0;     ///< int_{-pi}^{pi} |phihat|
    double l1_bound = 0.0;          ///< core_integral + 2 pi * tail sum
    TailSum tails;
    double h2_ratio = 0.0;
    double certificate_slack = 0.0; ///< min over checked bands of tail_bound - grid sup (negative = violated)
    double h3_at_zero = 0.0;        ///< m_alpha / phihat_alpha(0)
    std::vector<double> h3_ratios;  ///< m_alpha / phihat_alpha on the interior grid
    Verdict a1 = Verdict::Indeterminate;
    Verdict a2 = Verdict::Indeterminate;
    Verdict a3 = Verdict::Indeterminate;
    std::string error;              ///< evaluation failure, if any
};

struct HypothesisReport {
    std::string kernel;
    std::vector<double> ladder;
    std::vector<double> h3_grid;
    std::vector<AlphaRecord> records;
    CertifyOptions options;
    Verdict a1 = Verdict::Indeterminate;
    Verdict a2 = Verdict::Indeterminate;
    Verdict a3 = Verdict::Indeterminate;
    Verdict h1 = Verdict::Indeterminate;
    Verdict h2 = Verdict::Indeterminate;
    Verdict h3 = Verdict::Indeterminate;
    double h2_constant = 0.0;  ///< max H2 ratio over the ladder
    std::vector<std::string> notes;

    Verdict overall() const;
};

/// Evaluates (A1)-(A3) per parameter and (H1)-(H3) across the ladder.
/// Throws DomainError for an empty, unsorted or out-of-domain ladder;
/// evaluation failures yield Indeterminate verdicts rather than exceptions.
HypothesisReport certify_family(const KernelFamily& kernel, std::span<const double> ladder,
                                const CertifyOptions& options = {});

// --- periodization -------------------------------------------------------------

/// max over `xi_grid` of |fhat(xi) - psi(xi) sum_{|j| <= J} phihat(xi + 2 pi j)|
/// for a model built on an integer grid. DomainError otherwise.
double periodization_check(const InterpolantModel& model, const NodeSequence& nodes, const PWSignal& signal,
                           std::span<const double> xi_grid);

// --- convergence sweep ---------------------------------------------------------

enum SweepFlag : unsigned {
    kIllConditioned = 1u << 0,
    kSolveFailed = 1u << 1,
    kConstantUnstable = 1u << 2,
    kTruncationLimited = 1u << 3,
};

/// Flag names joined with '|', or "" when none are set.
std::string describe_flags(unsigned flags);

struct ConvergenceRecord {
    double alpha = 0.0;
    double sup_error = 0.0;       ///< interior probe grid
    double sup_error_full = 0.0;  ///< whole window
    double l2_error = 0.0;        ///< sqrt(step * sum diff^2) over the interior grid
    double bound = 0.0;           ///< t_alpha_bound
    double c_fit_ratio = 0.0;     ///< sup_error / (C_fit * bound)
    double node_residual = 0.0;   ///< max over nodes of |I f(x_k) - f(x_k)|
    double condition = 0.0;
    double truncation_floor = 0.0;  ///< max interior |I_N f - I_2N f|; NaN when not measured
    unsigned flags = 0;
    std::string error;
};

struct SweepOptions {
    double probe_step = 0.25;
    double interior_fraction = 0.75;
    SolveOptions solve;
    /// Re-solve on the doubled window to measure the truncation floor.
    bool measure_truncation = true;
    /// A rung whose sup_error is below this multiple of the floor is flagged.
    double truncation_factor = 10.0;
    double stability_factor = 3.0;
    int threads = 1;
};

struct SweepResult {
    std::vector<ConvergenceRecord> records;
    double c_fit = 0.0;
    std::optional<double> c_fit_alpha;
};

/// Runs assemble -> solve -> evaluate -> bound for each rung. Rungs may run
/// concurrently; records come back in ladder order and do not depend on the
/// thread count.
SweepResult convergence_sweep(const PWSignal& signal, const KernelHandle& kernel, const NodeSequence& nodes,
                              std::span<const double> ladder, const SweepOptions& options = {});

/// Same window with twice the half-width: integer grids stay integer, seeded
/// windows are extended with the same seed. Empty for explicit delta lists.
std::optional<NodeSequence> doubled_window(const NodeSequence& nodes);

}  // namespace pwinterp
