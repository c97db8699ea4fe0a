#include "pwinterp/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "pwinterp/error.hpp"

namespace pwinterp {
namespace {

// In-place lower Cholesky factor; throws at the first pivot at or below
// eps * max diagonal.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    const double floor = std::numeric_limits<double>::epsilon() * a.diagonal().cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = a(j, j);
        for (Eigen::Index p = 0; p < j; ++p) d -= l(j, p) * l(j, p);
        if (!(d > floor)) throw FactorizationError(static_cast<std::size_t>(j), d);
        const double root = std::sqrt(d);
        l(j, j) = root;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (Eigen::Index p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
            l(i, j) = s / root;
        }
    }
    return l;
}

Eigen::VectorXd cholesky_solve(const Eigen::MatrixXd& l, Eigen::VectorXd b) {
    const Eigen::Index n = l.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = b(i);
        for (Eigen::Index p = 0; p < i; ++p) s -= l(i, p) * b(p);
        b(i) = s / l(i, i);
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        double s = b(i);
        for (Eigen::Index p = i + 1; p < n; ++p) s -= l(p, i) * b(p);
        b(i) = s / l(i, i);
    }
    return b;
}

long double residual_into(const Eigen::MatrixXd& g, std::span<const double> f, const std::vector<long double>& a,
                          std::vector<long double>& r) {
    const Eigen::Index n = g.rows();
    long double worst = 0.0L;
    for (Eigen::Index k = 0; k < n; ++k) {
        long double s = f[static_cast<std::size_t>(k)];
        for (Eigen::Index j = 0; j < n; ++j) s -= static_cast<long double>(g(k, j)) * a[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(k)] = s;
        worst = std::max(worst, std::fabs(s));
    }
    return worst;
}

}  // namespace

GramMatrix assemble_gram(std::span<const double> points, const KernelFamily& kernel, double alpha) {
    kernel.require_parameter(alpha);
    const auto n = static_cast<Eigen::Index>(points.size());
    GramMatrix gram{Eigen::MatrixXd(n, n), kernel.name(), alpha};
    std::unordered_map<double, double> cache;
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index j = 0; j <= k; ++j) {
            const double d = std::abs(points[static_cast<std::size_t>(k)] - points[static_cast<std::size_t>(j)]);
            auto it = cache.find(d);
            if (it == cache.end()) {
                try {
                    it = cache.emplace(d, kernel.spatial(d, alpha)).first;
                } catch (const DomainError& e) {
                    throw DomainError("gram entry (" + std::to_string(k) + ", " + std::to_string(j) + "): " + e.what());
                } catch (const std::exception& e) {
                    throw NumericalError("gram entry (" + std::to_string(k) + ", " + std::to_string(j) + "): " + e.what());
                }
            }
            gram.entries(k, j) = it->second;
            gram.entries(j, k) = it->second;
        }
    }
    return gram;
}

GramMatrix assemble_gram(const NodeSequence& nodes, const KernelFamily& kernel, double alpha) {
    return assemble_gram(nodes.nodes(), kernel, alpha);
}

Spectrum extreme_eigenvalues(const GramMatrix& gram) {
    if (gram.dimension() == 0) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram.entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("gram eigenvalue iteration failed");
    return {solver.eigenvalues()(0), solver.eigenvalues()(gram.dimension() - 1)};
}

SolveResult solve_coefficients(const GramMatrix& gram, std::span<const double> samples, const SolveOptions& options) {
    const Eigen::Index n = gram.dimension();
    if (static_cast<Eigen::Index>(samples.size()) != n)
        throw DomainError("solve_coefficients: " + std::to_string(samples.size()) + " samples for a gram of dimension " +
                          std::to_string(n));

    SolveResult out;
    const Spectrum spectrum = extreme_eigenvalues(gram);
    out.condition_estimate = spectrum.condition();
    out.ill_conditioned = !(out.condition_estimate <= options.condition_limit);
    out.coefficients.assign(static_cast<std::size_t>(n), 0.0L);

    double scale = 0.0;
    for (double f : samples) scale = std::max(scale, std::abs(f));
    if (scale == 0.0) return out;

    const Eigen::MatrixXd l = cholesky_lower(gram.entries);
    std::vector<long double> r(samples.begin(), samples.end());
    long double residual = scale;
    long double previous = std::numeric_limits<long double>::infinity();
    const long double target = options.residual_tolerance * scale;
    for (int it = 0; it < options.max_refinements; ++it) {
        Eigen::VectorXd rhs(n);
        for (Eigen::Index k = 0; k < n; ++k) rhs(k) = static_cast<double>(r[static_cast<std::size_t>(k)]);
        const Eigen::VectorXd step = cholesky_solve(l, rhs);
        for (Eigen::Index k = 0; k < n; ++k) out.coefficients[static_cast<std::size_t>(k)] += step(k);
        residual = residual_into(gram.entries, samples, out.coefficients, r);
        out.refinements = it + 1;
        // keep refining while it pays; stop once converged well past the target
        if (residual <= target && (residual <= 1e-3L * target || residual > 0.5L * previous)) break;
        if (residual > 0.5L * previous && residual > target) break;
        previous = residual;
    }
    out.residual = static_cast<double>(residual);
    if (!(residual <= target))
        throw NumericalError("solve_coefficients: residual " + std::to_string(out.residual) +
                             " above tolerance after " + std::to_string(out.refinements) + " refinements (condition ~" +
                             std::to_string(out.condition_estimate) + ")");
    return out;
}

InterpolantModel::InterpolantModel(std::vector<double> centers, std::vector<long double> coefficients,
                                   KernelHandle kernel, double alpha, double residual, double condition_estimate,
                                   bool ill_conditioned)
    : centers_(std::move(centers)),
      coefficients_(std::move(coefficients)),
      kernel_(std::move(kernel)),
      alpha_(alpha),
      residual_(residual),
      condition_(condition_estimate),
      ill_conditioned_(ill_conditioned) {
    if (!kernel_) throw DomainError("interpolant requires a kernel");
    if (centers_.size() != coefficients_.size())
        throw DomainError("interpolant: " + std::to_string(centers_.size()) + " centers but " +
                          std::to_string(coefficients_.size()) + " coefficients");
    kernel_->require_parameter(alpha_);
}

double InterpolantModel::coefficient_norm() const {
    long double s = 0.0L;
    for (long double a : coefficients_) s += a * a;
    return static_cast<double>(std::sqrt(s));
}

InterpolantModel interpolate(std::span<const double> points, KernelHandle kernel, double alpha,
                             std::span<const double> samples, const SolveOptions& options) {
    const GramMatrix gram = assemble_gram(points, *kernel, alpha);
    SolveResult solved = solve_coefficients(gram, samples, options);
    return InterpolantModel(std::vector<double>(points.begin(), points.end()), std::move(solved.coefficients),
                            std::move(kernel), alpha, solved.residual, solved.condition_estimate, solved.ill_conditioned);
}

InterpolantModel interpolate(const NodeSequence& nodes, KernelHandle kernel, double alpha,
                             std::span<const double> samples, const SolveOptions& options) {
    return interpolate(nodes.nodes(), std::move(kernel), alpha, samples, options);
}

double evaluate_interpolant(const InterpolantModel& model, double x) {
    const auto centers = model.centers();
    const auto a = model.coefficients();
    long double s = 0.0L;
    for (std::size_t j = 0; j < centers.size(); ++j) {
        if (a[j] == 0.0L) continue;
        s += a[j] * static_cast<long double>(model.kernel()->spatial(x - centers[j], model.alpha()));
    }
    return static_cast<double>(s);
}

std::vector<double> evaluate_interpolant(const InterpolantModel& model, std::span<const double> xs) {
    const auto centers = model.centers();
    const auto a = model.coefficients();
    std::unordered_map<double, double> cache;
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        long double s = 0.0L;
        for (std::size_t j = 0; j < centers.size(); ++j) {
            if (a[j] == 0.0L) continue;
            const double d = std::abs(x - centers[j]);
            auto it = cache.find(d);
            if (it == cache.end()) it = cache.emplace(d, model.kernel()->spatial(d, model.alpha())).first;
            s += a[j] * static_cast<long double>(it->second);
        }
        out.push_back(static_cast<double>(s));
    }
    return out;
}

std::complex<double> coefficient_symbol(const InterpolantModel& model, double xi) {
    const auto centers = model.centers();
    const auto a = model.coefficients();
    long double re = 0.0L;
    long double im = 0.0L;
    for (std::size_t j = 0; j < centers.size(); ++j) {
        const long double phase = -static_cast<long double>(centers[j]) * xi;
        re += a[j] * std::cos(phase);
        im += a[j] * std::sin(phase);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

nlohmann::json to_json(const InterpolantModel& model, const std::string& nodes_ref) {
    std::vector<double> hi;
    std::vector<double> lo;
    for (long double a : model.coefficients()) {
        const double h = static_cast<double>(a);
        hi.push_back(h);
        lo.push_back(static_cast<double>(a - static_cast<long double>(h)));
    }
    nlohmann::json doc;
    doc["kernel"] = model.kernel()->name();
    doc["alpha"] = model.alpha();
    doc["nodes_ref"] = nodes_ref;
    doc["coefficients"] = hi;
    doc["coefficients_lo"] = lo;
    doc["residual"] = model.solve_residual();
    doc["condition_estimate"] = model.condition_estimate();
    doc["ill_conditioned"] = model.ill_conditioned();
    return doc;
}

InterpolantModel interpolant_from_json(const nlohmann::json& doc, const NodeSequence& nodes) {
    try {
        const auto hi = doc.at("coefficients").get<std::vector<double>>();
        std::vector<double> lo(hi.size(), 0.0);
        if (doc.contains("coefficients_lo")) lo = doc.at("coefficients_lo").get<std::vector<double>>();
        if (lo.size() != hi.size()) throw DomainError("coefficients_lo length mismatch");
        std::vector<long double> a(hi.size());
        for (std::size_t i = 0; i < hi.size(); ++i) a[i] = static_cast<long double>(hi[i]) + lo[i];
        return InterpolantModel(std::vector<double>(nodes.nodes().begin(), nodes.nodes().end()), std::move(a),
                                make_family(doc.at("kernel").get<std::string>()), doc.at("alpha").get<double>(),
                                doc.value("residual", 0.0), doc.value("condition_estimate", 0.0),
                                doc.value("ill_conditioned", false));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("interpolant document: ") + e.what());
    }
}

}  // namespace pwinterp
