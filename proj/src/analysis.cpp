#include "pwinterp/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "pwinterp/error.hpp"
#include "pwinterp/quadrature.hpp"

namespace pwinterp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_value(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Indeterminate: return "INDETERMINATE";
    }
    return "INDETERMINATE";
}

Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
    if (a == Verdict::Indeterminate || b == Verdict::Indeterminate) return Verdict::Indeterminate;
    return Verdict::Pass;
}

std::vector<double> interior_xi_grid(int n) {
    if (n < 1) throw DomainError("xi grid needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = -kPi + (i + 0.5) * 2.0 * kPi / n;
    return out;
}

std::vector<double> closed_xi_grid(int n) {
    if (n < 2) throw DomainError("closed xi grid needs at least two points");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = -kPi + 2.0 * kPi * i / (n - 1);
    out.back() = kPi;
    return out;
}

std::vector<double> probe_grid(const NodeSequence& nodes, double step, double fraction) {
    if (!(step > 0.0)) throw DomainError("probe step must be positive");
    if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("probe fraction must lie in (0, 1]");
    const double reach = fraction * nodes.half_width();
    const long count = static_cast<long>(std::floor(reach / step + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(2 * count + 1));
    for (long k = -count; k <= count; ++k) out.push_back(static_cast<double>(k) * step);
    return out;
}

double t_alpha_bound(const PWSignal& signal, const KernelFamily& kernel, double alpha) {
    kernel.require_parameter(alpha);
    const double m = kernel.lower_bound(alpha);
    auto breaks = signal.breakpoints();
    breaks.push_back(0.0);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const auto integrand = [&](double xi) {
        const double ratio = m / kernel.transform(xi, alpha);
        return ratio * ratio * std::norm(signal.spectrum(xi));
    };
    const auto est = quadrature::integrate_piecewise(integrand, breaks, 1e-300, 1e-13);
    return std::sqrt(std::max(est.value, 0.0));
}

double sup_error(const PWSignal& signal, const InterpolantModel& model, std::span<const double> probe) {
    const auto values = evaluate_interpolant(model, probe);
    double worst = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i)
        worst = std::max(worst, std::abs(signal.real_value(probe[i]) - values[i]));
    return worst;
}

TailSum tail_sum(const KernelFamily& kernel, double alpha, long j_max, double rel_tol) {
    kernel.require_parameter(alpha);
    TailSum out;
    for (long j = 1; j <= j_max; ++j) {
        const double term = kernel.tail_bound(j, alpha) + kernel.tail_bound(-j, alpha);
        if (!std::isfinite(term)) {
            out.sum = term;
            out.terms = j;
            return out;
        }
        if (j > 1 && term <= rel_tol * out.sum) {
            out.first_omitted = term;
            out.converged = true;
            return out;
        }
        out.sum += term;
        out.terms = j;
    }
    out.first_omitted = kernel.tail_bound(j_max + 1, alpha) + kernel.tail_bound(-j_max - 1, alpha);
    out.converged = out.first_omitted <= rel_tol * out.sum;
    return out;
}

GramBrackets gram_brackets(const KernelFamily& kernel, double alpha, const RieszBounds& riesz) {
    const double root = std::sqrt(2.0 * kPi);
    const TailSum tails = tail_sum(kernel, alpha);
    return {root * kernel.lower_bound(alpha) * riesz.lower,
            root * (kernel.tail_bound(0, alpha) + tails.sum) * riesz.upper};
}

// --- certification -------------------------------------------------------------

Verdict HypothesisReport::overall() const {
    Verdict v = Verdict::Pass;
    for (Verdict h : {a1, a2, a3, h1, h2, h3}) v = combine(v, h);
    return v;
}

namespace {

AlphaRecord certify_alpha(const KernelFamily& kernel, double alpha, const CertifyOptions& options,
                          std::span<const double> closed, std::span<const double> interior) {
    AlphaRecord rec;
    rec.alpha = alpha;
    try {
        rec.m_alpha = kernel.lower_bound(alpha);

        rec.grid_floor = std::numeric_limits<double>::infinity();
        for (double xi : closed) rec.grid_floor = std::min(rec.grid_floor, kernel.transform(xi, alpha));

        rec.certificate_slack = std::numeric_limits<double>::infinity();
        for (long j = -options.certify_bands; j <= options.certify_bands; ++j) {
            double sup = 0.0;
            for (double xi : closed) {
                const double v = kernel.transform(xi + 2.0 * kPi * static_cast<double>(j), alpha);
                rec.negative_mass = std::min(rec.negative_mass, v);
                sup = std::max(sup, std::abs(v));
            }
            const double bound = kernel.tail_bound(j, alpha);
            rec.certificate_slack = std::min(rec.certificate_slack, bound * (1.0 + 1e-12) - sup);
        }

        rec.tails = tail_sum(kernel, alpha, options.j_max, options.tail_rel_tol);
        const std::vector<double> breaks{-kPi, -kPi / 2, 0.0, kPi / 2, kPi};
        rec.core_integral =
            quadrature::integrate_piecewise([&](double xi) { return std::abs(kernel.transform(xi, alpha)); }, breaks,
                                            1e-300, 1e-12)
                .value;
        rec.l1_bound = rec.core_integral + 2.0 * kPi * rec.tails.sum;

        rec.h2_ratio = rec.m_alpha > 0.0 ? rec.tails.sum / rec.m_alpha : std::numeric_limits<double>::infinity();
        rec.h3_at_zero = rec.m_alpha / kernel.transform(0.0, alpha);
        rec.h3_ratios.reserve(interior.size());
        for (double xi : interior) rec.h3_ratios.push_back(rec.m_alpha / kernel.transform(xi, alpha));

        if (!std::isfinite(rec.l1_bound))
            rec.a1 = Verdict::Fail;
        else
            rec.a1 = rec.tails.converged ? Verdict::Pass : Verdict::Indeterminate;

        if (!(rec.m_alpha > 0.0) || rec.negative_mass < 0.0)
            rec.a2 = Verdict::Fail;
        else
            rec.a2 = rec.grid_floor >= rec.m_alpha * (1.0 - 1e-12) ? Verdict::Pass : Verdict::Indeterminate;

        if (!std::isfinite(rec.tails.sum))
            rec.a3 = Verdict::Fail;
        else
            rec.a3 = rec.tails.converged && rec.certificate_slack >= 0.0 ? Verdict::Pass : Verdict::Indeterminate;
    } catch (const std::exception& e) {
        rec.error = e.what();
        rec.a1 = rec.a2 = rec.a3 = Verdict::Indeterminate;
    }
    return rec;
}

}  // namespace

HypothesisReport certify_family(const KernelFamily& kernel, std::span<const double> ladder,
                                const CertifyOptions& options) {
    if (ladder.empty()) throw DomainError("certify_family: empty parameter ladder");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        kernel.require_parameter(ladder[i]);
        if (i > 0 && !(ladder[i] > ladder[i - 1])) throw DomainError("certify_family: ladder must be increasing");
    }

    HypothesisReport report;
    report.kernel = kernel.name();
    report.ladder.assign(ladder.begin(), ladder.end());
    report.options = options;
    report.h3_grid = interior_xi_grid(options.h3_points);
    const auto closed = closed_xi_grid(options.grid_points);

    report.a1 = report.a2 = report.a3 = Verdict::Pass;
    bool evaluation_failed = false;
    for (double alpha : ladder) {
        report.records.push_back(certify_alpha(kernel, alpha, options, closed, report.h3_grid));
        const auto& rec = report.records.back();
        report.a1 = combine(report.a1, rec.a1);
        report.a2 = combine(report.a2, rec.a2);
        report.a3 = combine(report.a3, rec.a3);
        const std::string at = " at " + format_value(alpha);
        if (!rec.error.empty()) {
            evaluation_failed = true;
            report.notes.push_back("evaluation failed" + at + ": " + rec.error);
            continue;
        }
        if (rec.a2 == Verdict::Fail)
            report.notes.push_back("A2: transform floor " + format_value(std::min(rec.m_alpha, rec.negative_mass)) +
                                   " is not positive" + at);
        if (rec.a2 == Verdict::Indeterminate)
            report.notes.push_back("A2: grid minimum " + format_value(rec.grid_floor) + " below reported floor" + at);
        if (!rec.tails.converged) report.notes.push_back("A3: tail sum not converged by J_max" + at);
        if (rec.certificate_slack < 0.0)
            report.notes.push_back("A3: tail bound exceeded on the grid by " + format_value(-rec.certificate_slack) + at);
    }
    report.h1 = combine(report.a1, combine(report.a2, report.a3));

    // H2 needs certified tails and a positive floor.
    report.h2_constant = 0.0;
    for (const auto& rec : report.records) report.h2_constant = std::max(report.h2_constant, rec.h2_ratio);
    if (evaluation_failed) {
        report.h2 = Verdict::Indeterminate;
    } else if (std::any_of(report.records.begin(), report.records.end(),
                           [](const AlphaRecord& r) { return !(r.m_alpha > 0.0); })) {
        report.h2 = Verdict::Fail;
        report.notes.push_back("H2: ratio undefined for a non-positive floor");
    } else if (report.a3 != Verdict::Pass) {
        report.h2 = Verdict::Indeterminate;
    } else if (report.h2_constant <= options.h2_limit) {
        report.h2 = Verdict::Pass;
    } else {
        report.h2 = Verdict::Fail;
        report.notes.push_back("H2: ratio " + format_value(report.h2_constant) + " exceeds " +
                               format_value(options.h2_limit));
    }

    // H3: non-increasing at every interior point, strictly lower overall, and
    // below the threshold at xi = 0 on the last rung.
    if (evaluation_failed) {
        report.h3 = Verdict::Indeterminate;
    } else if (report.records.size() < 2) {
        report.h3 = Verdict::Indeterminate;
        report.notes.push_back("H3: a single rung cannot show a trend");
    } else {
        report.h3 = Verdict::Pass;
        const auto& first = report.records.front();
        const auto& last = report.records.back();
        for (const auto& rec : report.records) {
            const bool usable = std::all_of(rec.h3_ratios.begin(), rec.h3_ratios.end(),
                                            [](double r) { return std::isfinite(r) && r > 0.0; });
            if (!usable) {
                report.h3 = Verdict::Fail;
                report.notes.push_back("H3: ratio not positive and finite at " + format_value(rec.alpha));
                break;
            }
        }
        for (std::size_t i = 0; report.h3 == Verdict::Pass && i < report.h3_grid.size(); ++i) {
            for (std::size_t r = 1; r < report.records.size(); ++r) {
                if (report.records[r].h3_ratios[i] > report.records[r - 1].h3_ratios[i] * (1.0 + 1e-12)) {
                    report.h3 = Verdict::Fail;
                    report.notes.push_back("H3: ratio increases at xi = " + format_value(report.h3_grid[i]));
                    break;
                }
            }
            if (report.h3 == Verdict::Pass && !(last.h3_ratios[i] < first.h3_ratios[i])) {
                report.h3 = Verdict::Fail;
                report.notes.push_back("H3: no decrease at xi = " + format_value(report.h3_grid[i]));
            }
        }
        if (report.h3 == Verdict::Pass && !(last.h3_at_zero <= options.h3_threshold)) {
            report.h3 = Verdict::Fail;
            report.notes.push_back("H3: ratio at xi = 0 is " + format_value(last.h3_at_zero) + " on the last rung");
        }
    }
    return report;
}

// --- periodization -------------------------------------------------------------

double periodization_check(const InterpolantModel& model, const NodeSequence& nodes, const PWSignal& signal,
                           std::span<const double> xi_grid) {
    if (!nodes.is_integer_grid()) throw DomainError("periodization_check requires an integer grid");
    if (model.centers().size() != nodes.size()) throw DomainError("periodization_check: model and window differ");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (model.centers()[i] != nodes.nodes()[i]) throw DomainError("periodization_check: model and window differ");

    const KernelFamily& kernel = *model.kernel();
    const double alpha = model.alpha();
    const long bands = tail_sum(kernel, alpha).terms;
    double worst = 0.0;
    for (double xi : xi_grid) {
        if (!(std::abs(xi) < kPi)) throw DomainError("periodization grid must lie inside (-pi, pi)");
        double folded = 0.0;
        for (long j = -bands; j <= bands; ++j) folded += kernel.transform(xi + 2.0 * kPi * static_cast<double>(j), alpha);
        const std::complex<double> defect = signal.spectrum(xi) - coefficient_symbol(model, xi) * folded;
        worst = std::max(worst, std::abs(defect));
    }
    return worst;
}

// --- sweep ---------------------------------------------------------------------

std::string describe_flags(unsigned flags) {
    std::string out;
    const auto add = [&](unsigned bit, const char* name) {
        if (!(flags & bit)) return;
        if (!out.empty()) out += '|';
        out += name;
    };
    add(kIllConditioned, "ill_conditioned");
    add(kSolveFailed, "solve_failed");
    add(kConstantUnstable, "constant_unstable");
    add(kTruncationLimited, "truncation_limited");
    return out;
}

std::optional<NodeSequence> doubled_window(const NodeSequence& nodes) {
    const int n = 2 * nodes.half_width();
    if (nodes.is_integer_grid()) return integer_sequence(n);
    if (nodes.seed()) return perturbed_sequence(n, nodes.perturbation_bound(), *nodes.seed());
    return std::nullopt;
}

namespace {

struct SweepPlan {
    const PWSignal* signal;
    const KernelHandle* kernel;
    const NodeSequence* nodes;
    const NodeSequence* doubled;
    std::vector<double> samples;
    std::vector<double> doubled_samples;
    std::vector<double> probe;
    std::vector<double> truth;
    std::vector<bool> interior;
    const SweepOptions* options;
};

std::optional<InterpolantModel> try_solve(std::span<const double> points, const KernelHandle& kernel, double alpha,
                                          std::span<const double> samples, const SolveOptions& options,
                                          ConvergenceRecord& rec, bool primary) {
    try {
        return interpolate(points, kernel, alpha, samples, options);
    } catch (const NumericalError& e) {
        if (primary) {
            rec.flags |= kSolveFailed;
            rec.error = e.what();
            try {
                const auto spectrum = extreme_eigenvalues(assemble_gram(points, *kernel, alpha));
                rec.condition = spectrum.condition();
                if (!(rec.condition <= options.condition_limit)) rec.flags |= kIllConditioned;
            } catch (const std::exception&) {
            }
        }
        return std::nullopt;
    }
}

ConvergenceRecord run_rung(const SweepPlan& plan, double alpha) {
    const SweepOptions& opt = *plan.options;
    ConvergenceRecord rec;
    rec.alpha = alpha;
    rec.truncation_floor = kNaN;
    rec.c_fit_ratio = kNaN;
    try {
        rec.bound = t_alpha_bound(*plan.signal, **plan.kernel, alpha);
        auto model = try_solve(plan.nodes->nodes(), *plan.kernel, alpha, plan.samples, opt.solve, rec, true);
        if (!model) {
            rec.sup_error = rec.sup_error_full = rec.l2_error = rec.node_residual = kNaN;
            return rec;
        }
        rec.condition = model->condition_estimate();
        if (model->ill_conditioned()) rec.flags |= kIllConditioned;

        const auto values = evaluate_interpolant(*model, plan.probe);
        double sum_sq = 0.0;
        std::vector<double> interior_values;
        for (std::size_t i = 0; i < plan.probe.size(); ++i) {
            const double diff = std::abs(plan.truth[i] - values[i]);
            rec.sup_error_full = std::max(rec.sup_error_full, diff);
            if (!plan.interior[i]) continue;
            rec.sup_error = std::max(rec.sup_error, diff);
            sum_sq += diff * diff;
            interior_values.push_back(values[i]);
        }
        rec.l2_error = std::sqrt(opt.probe_step * sum_sq);

        const auto at_nodes = evaluate_interpolant(*model, plan.nodes->nodes());
        for (std::size_t k = 0; k < at_nodes.size(); ++k)
            rec.node_residual = std::max(rec.node_residual, std::abs(at_nodes[k] - plan.samples[k]));

        if (plan.doubled) {
            ConvergenceRecord scratch;
            auto wide = try_solve(plan.doubled->nodes(), *plan.kernel, alpha, plan.doubled_samples, opt.solve, scratch,
                                  false);
            if (wide) {
                std::vector<double> inner;
                for (std::size_t i = 0; i < plan.probe.size(); ++i)
                    if (plan.interior[i]) inner.push_back(plan.probe[i]);
                const auto wide_values = evaluate_interpolant(*wide, inner);
                double floor = 0.0;
                for (std::size_t i = 0; i < inner.size(); ++i)
                    floor = std::max(floor, std::abs(wide_values[i] - interior_values[i]));
                rec.truncation_floor = floor;
                if (rec.sup_error < opt.truncation_factor * floor) rec.flags |= kTruncationLimited;
            }
        }
    } catch (const std::exception& e) {
        rec.flags |= kSolveFailed;
        rec.error = e.what();
    }
    return rec;
}

}  // namespace

SweepResult convergence_sweep(const PWSignal& signal, const KernelHandle& kernel, const NodeSequence& nodes,
                              std::span<const double> ladder, const SweepOptions& options) {
    if (!kernel) throw DomainError("convergence_sweep: no kernel");
    if (ladder.empty()) throw DomainError("convergence_sweep: empty parameter ladder");
    for (double alpha : ladder) kernel->require_parameter(alpha);
    if (!(options.interior_fraction > 0.0 && options.interior_fraction <= 1.0))
        throw DomainError("interior fraction must lie in (0, 1]");

    std::optional<NodeSequence> doubled;
    if (options.measure_truncation) doubled = doubled_window(nodes);

    SweepPlan plan{&signal, &kernel, &nodes, doubled ? &*doubled : nullptr, {}, {}, {}, {}, {}, &options};
    plan.samples = sample(signal, nodes).values;
    if (doubled) plan.doubled_samples = sample(signal, *doubled).values;
    plan.probe = probe_grid(nodes, options.probe_step, 1.0);
    const double reach = options.interior_fraction * nodes.half_width() + 1e-9;
    for (double x : plan.probe) {
        plan.truth.push_back(signal.real_value(x));
        plan.interior.push_back(std::abs(x) <= reach);
    }

    SweepResult result;
    result.records.resize(ladder.size());
    const int workers = std::clamp(options.threads, 1, static_cast<int>(ladder.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < ladder.size(); ++i) result.records[i] = run_rung(plan, ladder[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < ladder.size(); i = next++) result.records[i] = run_rung(plan, ladder[i]);
            });
        for (auto& t : pool) t.join();
    }

    for (const auto& rec : result.records) {
        if (rec.flags != 0 || !(rec.bound > 0.0)) continue;
        result.c_fit = rec.sup_error / rec.bound;
        result.c_fit_alpha = rec.alpha;
        break;
    }
    for (auto& rec : result.records) {
        if ((rec.flags & kSolveFailed) || !result.c_fit_alpha) continue;
        const double scaled = result.c_fit * rec.bound;
        rec.c_fit_ratio = scaled > 0.0 ? rec.sup_error / scaled : 0.0;
        if (rec.sup_error > options.stability_factor * scaled) rec.flags |= kConstantUnstable;
    }
    return result;
}

}  // namespace pwinterp
