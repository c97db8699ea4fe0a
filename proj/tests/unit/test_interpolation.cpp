#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle_values.hpp"
#include "pwinterp/analysis.hpp"
#include "pwinterp/error.hpp"
#include "pwinterp/interpolation.hpp"

using namespace pwinterp;

namespace {

constexpr double kPi = std::numbers::pi;

// Poisson kernel that refuses one particular distance.
class Faulty final : public KernelFamily {
public:
    std::string name() const override { return "faulty"; }
    ParameterDomain parameter_domain() const override { return {1.0, true, false}; }
    double spatial(double x, double a) const override {
        if (std::abs(std::abs(x) - 2.0) < 1e-12) throw NumericalError("refused");
        return poisson_spatial(x, a);
    }
    double transform(double xi, double a) const override { return poisson_transform(xi, a); }
    double lower_bound(double a) const override { return poisson_lower_bound(a); }
    double tail_bound(long j, double a) const override { return poisson_tail_bound(j, a); }
};

std::vector<double> values_of(const PWSignal& f, std::span<const double> xs) {
    std::vector<double> out;
    for (double x : xs) out.push_back(f.real_value(x));
    return out;
}

}  // namespace

TEST_CASE("Gram entries on integer grids") {
    const auto g1 = assemble_gram(integer_sequence(3), *poisson_family(), 1.0);
    CHECK(g1.entries(2, 3) == doctest::Approx(std::sqrt(2 / kPi) / 2).epsilon(1e-15));
    const auto g2 = assemble_gram(integer_sequence(3), *poisson_family(), 2.0);
    for (Eigen::Index k = 0; k < g2.dimension(); ++k) CHECK(g2.entries(k, k) == g2.entries(0, 0));
    CHECK(g2.entries(0, 0) == doctest::Approx(std::sqrt(2 / kPi) / 2).epsilon(1e-15));
    const auto w = assemble_gram(perturbed_sequence(10, 0.2, std::uint64_t{1}), *poisson_family(), 3.0);
    CHECK(w.entries == w.entries.transpose());
    CHECK(g1.kernel == "poisson");
}

TEST_CASE("5x5 Poisson Gram against the eigenvalue oracle") {
    const auto s = extreme_eigenvalues(assemble_gram(integer_sequence(2), *poisson_family(), 1.0));
    CHECK(std::abs(s.min - oracle::kPoisson5Lower) < 1e-14);
    CHECK(s.min > 0);
}

TEST_CASE("Kernel failures carry entry indices") {
    Faulty faulty;
    try {
        assemble_gram(integer_sequence(2), faulty, 1.0);
        FAIL("expected failure");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("gram entry (2, 0)") != std::string::npos);
    }
    CHECK_THROWS_AS(assemble_gram(integer_sequence(2), *poisson_family(), 0.5), DomainError);
}

TEST_CASE("Solve: trivial cases") {
    const auto g = assemble_gram(integer_sequence(4), *poisson_family(), 1.0);
    const std::vector<double> zeros(9, 0.0);
    const auto z = solve_coefficients(g, zeros);
    for (auto a : z.coefficients) CHECK(a == 0.0L);

    GramMatrix eye{Eigen::MatrixXd::Identity(4, 4), "identity", 1.0};
    const std::vector<double> f{1.5, -2.0, 0.25, 3.0};
    const auto r = solve_coefficients(eye, f);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(r.coefficients[i] == f[i]);

    CHECK_THROWS_AS(solve_coefficients(g, std::vector<double>(3, 1.0)), DomainError);
}

TEST_CASE("Solve: factorisation failure names the pivot") {
    GramMatrix bad{Eigen::MatrixXd(2, 2), "bad", 1.0};
    bad.entries << 1.0, 2.0, 2.0, 1.0;
    try {
        solve_coefficients(bad, std::vector<double>{1.0, 1.0});
        FAIL("expected failure");
    } catch (const FactorizationError& e) {
        CHECK(e.pivot_index() == 1);
        CHECK(e.pivot_value() < 0);
    }
}

TEST_CASE("Solve: sinc on the integer grid, N = 8, Poisson 1") {
    const auto nodes = integer_sequence(8);
    const auto g = assemble_gram(nodes, *poisson_family(), 1.0);
    const auto f = values_of(sinc_signal(), nodes.nodes());
    const auto r = solve_coefficients(g, f);
    CHECK(std::abs(double(r.coefficients[8]) - oracle::kPoissonN8A0) < 1e-12);
    CHECK(std::abs(double(r.coefficients[9]) - oracle::kPoissonN8A1) < 1e-12);
    // independent product with the closed-form kernel
    double worst = 0;
    for (int k = 0; k < 17; ++k) {
        long double s = 0;
        for (int j = 0; j < 17; ++j) s += r.coefficients[j] * (std::sqrt(2 / kPi) / (1.0 + (k - j) * (k - j)));
        worst = std::max(worst, double(std::abs(s - f[k])));
    }
    CHECK(worst <= 1e-10);
    CHECK(r.residual <= 1e-10);
}

TEST_CASE("Refinement reaches the residual contract when badly conditioned") {
    const auto nodes = integer_sequence(64);
    const auto f = values_of(sinc_signal(), nodes.nodes());
    const auto g = assemble_gram(nodes, *poisson_family(), 8.0);
    const auto r = solve_coefficients(g, f);
    CHECK(r.condition_estimate > 1e10);
    CHECK_FALSE(r.ill_conditioned);
    CHECK(r.residual <= 1e-10);
    CHECK(r.refinements >= 2);
    SolveOptions strict;
    strict.condition_limit = 1e6;
    CHECK(solve_coefficients(g, f, strict).ill_conditioned);
}

TEST_CASE("Interpolation conditions and evaluation") {
    const auto nodes = perturbed_sequence(32, 0.2, std::uint64_t{4});
    const auto f = sinc_signal(0.2);
    const auto samples = sample(f, nodes).values;
    for (const auto& [fam, alpha] : std::vector<std::pair<KernelHandle, double>>{
             {poisson_family(), 2.0}, {multiquadric_family(), 2.0}, {gaussian_family(), 0.5}}) {
        const auto model = interpolate(nodes, fam, alpha, samples);
        double worst = 0;
        for (std::size_t k = 0; k < nodes.size(); ++k)
            worst = std::max(worst, std::abs(evaluate_interpolant(model, nodes.nodes()[k]) - samples[k]));
        CAPTURE(fam->name());
        CHECK(worst <= 1e-8);
        const std::vector<double> xs{-3.3, 0.1, 7.75};
        const auto batch = evaluate_interpolant(model, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) CHECK(batch[i] == doctest::Approx(evaluate_interpolant(model, xs[i])).epsilon(1e-15));
        CHECK(std::isfinite(model.coefficient_norm()));
    }
    const InterpolantModel zero({0.0, 1.0}, {0.0L, 0.0L}, poisson_family(), 1.0);
    CHECK(evaluate_interpolant(zero, 0.4) == 0.0);
}

TEST_CASE("Coefficient symbol") {
    const InterpolantModel zero({0.0, 1.0}, {0.0L, 0.0L}, poisson_family(), 1.0);
    CHECK(coefficient_symbol(zero, 0.7) == std::complex<double>(0, 0));
    const InterpolantModel single({0.0}, {1.0L}, poisson_family(), 1.0);
    for (double xi : {-2.0, 0.0, 1.3}) CHECK(coefficient_symbol(single, xi) == std::complex<double>(1, 0));
    const auto nodes = integer_sequence(8);
    const auto m = interpolate(nodes, poisson_family(), 1.0, sample(triangle_signal(), nodes).values);
    for (double xi : {-1.0, 0.4, 2.9})
        CHECK(std::abs(coefficient_symbol(m, xi) - coefficient_symbol(m, xi + 2 * kPi)) < 1e-12);
}

TEST_CASE("Gram spectra respect the analytic brackets") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal;
    for (const auto& [fam, alpha] : std::vector<std::pair<KernelHandle, double>>{
             {poisson_family(), 1.0}, {poisson_family(), 4.0}, {multiquadric_family(), 1.0},
             {multiquadric_family(), 3.0}, {gaussian_family(), 1.0}}) {
        for (double L : {0.0, 0.1, 0.2}) {
            const auto nodes = L == 0 ? integer_sequence(32) : perturbed_sequence(32, L, std::uint64_t{21});
            const auto g = assemble_gram(nodes, *fam, alpha);
            const auto s = extreme_eigenvalues(g);
            const auto br = gram_brackets(*fam, alpha, riesz_bounds(nodes));
            CAPTURE(fam->name());
            CAPTURE(alpha);
            CAPTURE(L);
            CHECK(s.min > 0);
            CHECK(s.min >= br.floor);
            CHECK(s.max <= br.ceiling);
            for (int t = 0; t < 5; ++t) {
                Eigen::VectorXd a(g.dimension());
                for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = normal(rng);
                CHECK(a.dot(g.entries * a) >= s.min * a.squaredNorm() * (1 - 1e-12));
            }
        }
    }
}

TEST_CASE("Permutation equivariance") {
    const auto nodes = perturbed_sequence(10, 0.2, std::uint64_t{8});
    const std::vector<double> x(nodes.nodes().begin(), nodes.nodes().end());
    const auto f = values_of(triangle_signal(), x);
    std::vector<std::size_t> order(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), std::mt19937_64(5));
    std::vector<double> px, pf;
    for (auto i : order) {
        px.push_back(x[i]);
        pf.push_back(f[i]);
    }
    const auto a = interpolate(std::span<const double>(x), poisson_family(), 2.0, f);
    const auto b = interpolate(std::span<const double>(px), poisson_family(), 2.0, pf);
    for (std::size_t i = 0; i < order.size(); ++i)
        CHECK(std::abs(double(b.coefficients()[i] - a.coefficients()[order[i]])) < 1e-12 * std::max(1.0, a.coefficient_norm()));
    for (double t : {-4.2, 0.5, 3.3}) CHECK(std::abs(evaluate_interpolant(a, t) - evaluate_interpolant(b, t)) < 1e-12);
}

TEST_CASE("Model JSON round trip") {
    const auto nodes = integer_sequence(16);
    const auto m = interpolate(nodes, poisson_family(), 4.0, sample(sinc_signal(), nodes).values);
    const auto doc = to_json(m, "nodes.json");
    CHECK(doc["kernel"] == "poisson");
    CHECK(doc["nodes_ref"] == "nodes.json");
    const auto back = interpolant_from_json(doc, nodes);
    for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(back.coefficients()[i] == m.coefficients()[i]);
    CHECK(back.alpha() == 4.0);
    auto broken = doc;
    broken["coefficients"].erase(0);
    CHECK_THROWS_AS(interpolant_from_json(broken, nodes), DomainError);
}
