#include "pwinterp/sequences.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "pwinterp/error.hpp"

namespace pwinterp {

NodeSequence::NodeSequence(int half_width, double perturbation_bound, std::vector<double> deltas,
                           std::optional<std::uint64_t> seed)
    : half_width_(half_width),
      perturbation_bound_(perturbation_bound),
      deltas_(std::move(deltas)),
      seed_(seed) {
    if (half_width < 1) throw DomainError("node window half-width must be >= 1");
    if (!(perturbation_bound >= 0.0 && perturbation_bound < 0.25))
        throw DomainError("perturbation bound must lie in [0, 1/4), got " + std::to_string(perturbation_bound));
    const std::size_t count = 2 * static_cast<std::size_t>(half_width) + 1;
    if (deltas_.size() != count)
        throw DomainError("expected " + std::to_string(count) + " deltas, got " + std::to_string(deltas_.size()));
    nodes_.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const int j = static_cast<int>(i) - half_width;
        const double d = deltas_[i];
        if (!(std::abs(d) < 0.25))
            throw DomainError("delta at node index " + std::to_string(j) + " violates |delta| < 1/4");
        if (std::abs(d) > perturbation_bound)
            throw DomainError("delta at node index " + std::to_string(j) + " exceeds the perturbation bound");
        nodes_[i] = j + d;
    }
}

bool NodeSequence::is_integer_grid() const noexcept {
    for (double d : deltas_)
        if (d != 0.0) return false;
    return true;
}

NodeSequence integer_sequence(int half_width) {
    if (half_width < 1) throw DomainError("node window half-width must be >= 1");
    return NodeSequence(half_width, 0.0, std::vector<double>(2 * static_cast<std::size_t>(half_width) + 1, 0.0));
}

NodeSequence perturbed_sequence(int half_width, double perturbation_bound, std::vector<double> deltas) {
    return NodeSequence(half_width, perturbation_bound, std::move(deltas));
}

NodeSequence perturbed_sequence(int half_width, double perturbation_bound, std::uint64_t seed) {
    if (half_width < 1) throw DomainError("node window half-width must be >= 1");
    std::vector<double> deltas;
    deltas.reserve(2 * static_cast<std::size_t>(half_width) + 1);
    for (int j = -half_width; j <= half_width; ++j) {
        const auto index = static_cast<std::uint64_t>(static_cast<std::int64_t>(j));
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        std::mt19937_64 engine(seq);
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        deltas.push_back(perturbation_bound * (2.0 * u - 1.0));
    }
    return NodeSequence(half_width, perturbation_bound, std::move(deltas), seed);
}

double normalized_sinc(double t) {
    if (t == 0.0) return 1.0;
    const double arg = std::numbers::pi * t;
    return std::sin(arg) / arg;
}

RieszBounds riesz_bounds(const NodeSequence& nodes) { return riesz_bounds(nodes.nodes()); }

RieszBounds riesz_bounds(std::span<const double> x) {
    if (x.empty()) throw DomainError("riesz_bounds: empty point set");
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        gram(i, i) = 1.0;
        for (Eigen::Index k = 0; k < i; ++k) {
            const double v = normalized_sinc(x[i] - x[k]);
            gram(i, k) = v;
            gram(k, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("riesz_bounds: eigenvalue iteration failed");
    RieszBounds out;
    out.lower = solver.eigenvalues()(0);
    out.upper = solver.eigenvalues()(n - 1);
    out.usable = out.lower > kRieszFloor;
    return out;
}

nlohmann::json to_json(const NodeSequence& nodes) {
    nlohmann::json doc;
    doc["half_width"] = nodes.half_width();
    doc["perturbation_bound"] = nodes.perturbation_bound();
    doc["deltas"] = std::vector<double>(nodes.deltas().begin(), nodes.deltas().end());
    if (nodes.seed()) doc["seed"] = *nodes.seed();
    return doc;
}

NodeSequence node_sequence_from_json(const nlohmann::json& doc) {
    try {
        const int half_width = doc.at("half_width").get<int>();
        const double bound = doc.at("perturbation_bound").get<double>();
        auto deltas = doc.at("deltas").get<std::vector<double>>();
        std::optional<std::uint64_t> seed;
        if (doc.contains("seed")) seed = doc.at("seed").get<std::uint64_t>();
        return NodeSequence(half_width, bound, std::move(deltas), seed);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("node sequence document: ") + e.what());
    }
}

}  // namespace pwinterp
