// Acceptance suite: one line per criterion.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "../unit/oracle_values.hpp"
#include "pwinterp/analysis.hpp"
#include "pwinterp/bessel.hpp"
#include "pwinterp/error.hpp"
#include "pwinterp/reports.hpp"

using namespace pwinterp;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct FamilyCase {
    KernelHandle kernel;
    std::vector<double> params;
};

std::vector<FamilyCase> families() {
    return {{poisson_family(), {1, 2, 4, 8, 16}}, {multiquadric_family(), {1, 2, 3}}, {gaussian_family(), {1, 2, 4, 8}}};
}

NodeSequence window(int n, double L) {
    return L == 0.0 ? integer_sequence(n) : perturbed_sequence(n, L, std::uint64_t{20240611});
}

Outcome certification_poisson() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> ladder{1, 2, 4, 8, 16};
    const auto r = certify_family(*poisson_family(), ladder);
    const double took = seconds_since(t0);
    const double expected = 2 / (1 - std::exp(-2 * kPi));
    const bool all = r.a1 == Verdict::Pass && r.a2 == Verdict::Pass && r.a3 == Verdict::Pass &&
                     r.h1 == Verdict::Pass && r.h2 == Verdict::Pass && r.h3 == Verdict::Pass;
    const double err = std::abs(r.h2_constant - expected);
    return {all && err <= 1e-10 && took < 1.0,
            "poisson verdicts " + std::string(to_string(r.overall())) + ", H2 " + format_number(r.h2_constant) +
                " (|diff| " + fmt(err) + ")"};
}

Outcome certification_multiquadric() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> ladder{1, 2, 3};
    const auto r = certify_family(*multiquadric_family(), ladder);
    const double took = seconds_since(t0);
    const double limit = 2 + (4.0 / 3.0) / (std::exp(2 * kPi) - 1);
    return {r.overall() == Verdict::Pass && r.h2_constant <= limit && took < 10.0,
            "multiquadric verdicts " + std::string(to_string(r.overall())) + ", H2 " + format_number(r.h2_constant) +
                " <= " + format_number(limit)};
}

struct GramCase {
    KernelHandle kernel;
    double alpha;
    double L;
    int n;
    NodeSequence nodes;
    GramMatrix gram;
    Spectrum spectrum;
    bool flagged;
};

// Every (family, parameter, L, N) configuration, assembled once.
const std::vector<GramCase>& gram_cases() {
    static const std::vector<GramCase> cases = [] {
        std::vector<GramCase> out;
        for (const auto& fam : families())
            for (double alpha : fam.params)
                for (double L : {0.0, 0.1, 0.2})
                    for (int n : {32, 64}) {
                        auto nodes = window(n, L);
                        auto gram = assemble_gram(nodes, *fam.kernel, alpha);
                        const auto s = extreme_eigenvalues(gram);
                        const bool flagged = !(s.condition() <= SolveOptions{}.condition_limit);
                        out.push_back({fam.kernel, alpha, L, n, std::move(nodes), std::move(gram), s, flagged});
                    }
        return out;
    }();
    return cases;
}

std::string label(const GramCase& c) {
    return c.kernel->name() + " " + fmt(c.alpha) + " L=" + fmt(c.L) + " N=" + std::to_string(c.n);
}

Outcome spd_gram() {
    int tested = 0, skipped = 0, bad = 0;
    std::string first_bad;
    for (const auto& c : gram_cases()) {
        if (c.flagged) {
            ++skipped;
            continue;
        }
        ++tested;
        const auto br = gram_brackets(*c.kernel, c.alpha, riesz_bounds(c.nodes));
        const auto& s = c.spectrum;
        if (!(s.min > 0 && s.min >= br.floor && s.max <= br.ceiling) && !bad++)
            first_bad = label(c) + ": " + fmt(br.floor) + " <= " + fmt(s.min) + ", " + fmt(s.max) + " <= " +
                        fmt(br.ceiling);
    }
    return {bad == 0 && tested > 0, std::to_string(tested) + " configurations inside the brackets, " +
                                        std::to_string(skipped) + " flagged ill-conditioned and skipped" +
                                        (bad ? ", first violation " + first_bad : "")};
}

Outcome interpolation_conditions() {
    int tested = 0, skipped = 0;
    double worst = 0;
    std::string failure;
    const std::vector<PWSignal> signals{sinc_signal(0.3), triangle_signal()};
    for (const auto& c : gram_cases()) {
        if (c.flagged) {
            ++skipped;
            continue;
        }
        for (const auto& f : signals) {
            const auto samples = sample(f, c.nodes).values;
            try {
                const auto solved = solve_coefficients(c.gram, samples);
                const InterpolantModel model({c.nodes.nodes().begin(), c.nodes.nodes().end()}, solved.coefficients,
                                             c.kernel, c.alpha);
                ++tested;
                const auto at = evaluate_interpolant(model, c.nodes.nodes());
                for (std::size_t k = 0; k < at.size(); ++k) worst = std::max(worst, std::abs(at[k] - samples[k]));
            } catch (const std::exception& e) {
                if (failure.empty()) failure = label(c) + ": " + e.what();
            }
        }
    }
    return {failure.empty() && worst <= 1e-8 && tested > 0,
            "max node residual " + fmt(worst) + " over " + std::to_string(tested) + " unflagged solves, " +
                std::to_string(skipped) + " flagged configurations skipped" +
                (failure.empty() ? "" : ", error " + failure)};
}

// Non-increasing up to the truncation floor, checked on consecutive unflagged rungs.
bool monotone_to_floor(const SweepResult& r, const SweepOptions& opt) {
    const ConvergenceRecord* prev = nullptr;
    for (const auto& rec : r.records) {
        if (rec.flags & (kIllConditioned | kSolveFailed)) continue;
        if (prev && rec.sup_error > prev->sup_error &&
            !(rec.sup_error <= opt.truncation_factor * rec.truncation_floor))
            return false;
        prev = &rec;
    }
    return true;
}

Outcome convergence_poisson() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> ladder{1, 2, 4, 8, 16};
    double worst_bound = 0;
    for (double a : ladder) {
        const double closed = std::sqrt((1 - std::exp(-2 * a * kPi)) / (2 * kPi * a));
        worst_bound = std::max(worst_bound, std::abs(t_alpha_bound(sinc_signal(), *poisson_family(), a) - closed) / closed);
    }
    SweepOptions opt;
    const auto r = convergence_sweep(sinc_signal(), poisson_family(), integer_sequence(64), ladder, opt);
    const double took = seconds_since(t0);
    bool within = r.c_fit_alpha.has_value();
    int unflagged = 0;
    std::string sups;
    for (const auto& rec : r.records) {
        sups += (sups.empty() ? "" : " ") + fmt(rec.sup_error);
        if (rec.flags & (kIllConditioned | kSolveFailed)) {
            sups += "[" + describe_flags(rec.flags) + "]";
            continue;
        }
        ++unflagged;
        within = within && rec.sup_error <= 3 * r.c_fit * rec.bound;
    }
    const bool monotone = monotone_to_floor(r, opt);
    return {worst_bound <= 1e-8 && monotone && within && unflagged > 1 && took < 30.0,
            "bound rel err " + fmt(worst_bound) + ", sup " + sups + ", C_fit " + fmt(r.c_fit) +
                (monotone ? ", non-increasing" : ", NOT monotone") + (within ? ", within 3 C_fit bound" : ", outside 3 C_fit bound")};
}

Outcome convergence_multiquadric() {
    const std::vector<double> ladder{1, 2, 3};
    SweepOptions opt;
    const auto r = convergence_sweep(sinc_signal(), multiquadric_family(), integer_sequence(64), ladder, opt);
    bool decreasing = true;
    std::string detail;
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        if (i > 0) decreasing = decreasing && r.records[i].bound < r.records[i - 1].bound;
        detail += (i ? "; " : "") + std::string("k=") + fmt(r.records[i].alpha) + " sup " + fmt(r.records[i].sup_error) +
                  " bound " + fmt(r.records[i].bound);
    }
    const bool monotone = monotone_to_floor(r, opt);
    return {decreasing && monotone, detail};
}

Outcome special_functions(std::string& note) {
    int violations = 0, corrected_violations = 0;
    double worst_r = 0;
    for (int i = 0; i < 200; ++i) {
        const double r = 1e-4 * std::pow(30.0 / 1e-4, i / 199.0);
        const double k1 = bessel_k1(r);
        const bool lower_ok = macdonald_lower_bound(r) <= k1;
        if (!lower_ok || k1 > macdonald_upper_bound_decaying(r)) {
            if (!violations++ || r > worst_r) worst_r = r;
        }
        if (!lower_ok || k1 > macdonald_upper_bound(r)) ++corrected_violations;
    }
    const double rel = std::abs(bessel_k1(1.0) - oracle::kK1At1Integral) / oracle::kK1At1Integral;
    note = "growing-factor upper bound e^{+1/(2r)}: " + std::to_string(200 - corrected_violations) + "/200 points hold";
    return {violations == 0 && rel <= 1e-9,
            "sandwich with e^{-1/(2r)} violated at " + std::to_string(violations) +
                "/200 points (largest violating r " + fmt(worst_r) + "), K1(1) rel err " + fmt(rel)};
}

Outcome periodization() {
    // odd count: the grid contains xi = 0
    const auto xi = interior_xi_grid(1001);
    std::vector<double> defects;
    for (int n : {32, 64, 128}) {
        const auto nodes = integer_sequence(n);
        const auto model = interpolate(nodes, poisson_family(), 1.0, sample(sinc_signal(), nodes).values);
        defects.push_back(periodization_check(model, nodes, sinc_signal(), xi));
    }
    const bool decreasing = defects[1] < defects[0] && defects[2] < defects[1];
    return {decreasing && defects[2] < 1e-3, "defect N=32 " + fmt(defects[0]) + ", N=64 " + fmt(defects[1]) +
                                                 ", N=128 " + fmt(defects[2]) + " (target < 1e-3)"};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism() {
    const fs::path dir = fs::temp_directory_path() / ("pwinterp_acceptance_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const auto config = (dir / "sweep.json").string();
    std::ofstream(config) << R"({"kernel":{"name":"poisson","ladder":[1,2,4,8]},)"
                          << R"("nodes":{"half_width":32,"perturbation_bound":0.2,"seed":7},"signal":{"name":"sinc"}})";
    auto run = [&](const std::string& out) {
        const std::string cmd = std::string(PWINTERP_CLI) + " sweep --config " + config + " --out " +
                                (dir / out).string() + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    const int a = run("first"), b = run("second");
    const auto first = slurp(dir / "first" / "sweep.csv");
    const bool same = a == 0 && b == 0 && !first.empty() && first == slurp(dir / "second" / "sweep.csv");
    fs::remove_all(dir);
    return {same, "exit " + std::to_string(a) + "/" + std::to_string(b) + ", " + std::to_string(first.size()) +
                      " bytes, " + (same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string report_path = argc > 1 ? argv[1] : "acceptance_report.txt";
    std::string k1_note;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"hypothesis certification, poisson", certification_poisson},
        {"hypothesis certification, multiquadric", certification_multiquadric},
        {"positive definite Gram inside brackets", spd_gram},
        {"interpolation conditions", interpolation_conditions},
        {"convergence, sinc/poisson", convergence_poisson},
        {"convergence, multiquadric", convergence_multiquadric},
        {"K1 sandwich and K1(1)", [&] { return special_functions(k1_note); }},
        {"periodization identity", periodization},
        {"sweep determinism", determinism},
    };

    std::ostringstream report;
    int passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        passed += o.pass;
        o.detail += " [" + fmt(seconds_since(t0)) + " s]";
        report << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << ": " << o.detail << "\n";
        if (!k1_note.empty()) {
            report << "       note: " << k1_note << "\n";
            k1_note.clear();
        }
    }
    report << passed << "/" << criteria.size() << " criteria pass\n";

    std::cout << report.str();
    std::ofstream(report_path) << report.str();
    return 0;
}
