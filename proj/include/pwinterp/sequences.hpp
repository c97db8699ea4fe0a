#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace pwinterp {

/// Finite symmetric window x_{-N}, ..., x_N of a perturbed-integer sequence
/// x_j = j + delta_j with |delta_j| <= L < 1/4 (Kadec), hence a window of a
/// complete interpolating sequence.
class NodeSequence {
public:
    /// Validates the invariants; throws DomainError naming the offending index.
    NodeSequence(int half_width, double perturbation_bound, std::vector<double> deltas,
                 std::optional<std::uint64_t> seed = std::nullopt);

    int half_width() const noexcept { return half_width_; }
    double perturbation_bound() const noexcept { return perturbation_bound_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> deltas() const noexcept { return deltas_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }

    /// Node with signed index j in [-N, N].
    double at(int j) const { return nodes_.at(static_cast<std::size_t>(j + half_width_)); }

    /// True when every delta is exactly zero.
    bool is_integer_grid() const noexcept;

private:
    int half_width_;
    double perturbation_bound_;
    std::vector<double> deltas_;
    std::vector<double> nodes_;
    std::optional<std::uint64_t> seed_;
};

/// x_j = j, L = 0.
NodeSequence integer_sequence(int half_width);

/// x_j = j + deltas[j + N]; deltas.size() must be 2N + 1.
NodeSequence perturbed_sequence(int half_width, double perturbation_bound, std::vector<double> deltas);

/// Seeded variant: delta_j = L (2 u_j - 1) with u_j uniform in [0, 1) drawn
/// from an mt19937_64 keyed by (seed, j). Each delta depends only on its own
/// index, so windows built from one seed are nested.
NodeSequence perturbed_sequence(int half_width, double perturbation_bound, std::uint64_t seed);

struct RieszBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool usable = false;  ///< lower above the numerical floor
};

/// Smallest eigenvalue below which a window is flagged unusable.
inline constexpr double kRieszFloor = 1e-12;

/// Extreme eigenvalues of the normalised exponential Gram matrix
/// G_{jk} = sinc(x_j - x_k), sinc(t) = sin(pi t) / (pi t). For windowed
/// coefficient vectors a,
///   lower |a|^2 <= (1 / 2 pi) || sum a_j e^{-i x_j xi} ||^2_{L2[-pi,pi]} <= upper |a|^2.
RieszBounds riesz_bounds(const NodeSequence& nodes);
/// Same, for an arbitrary finite point set.
RieszBounds riesz_bounds(std::span<const double> points);

/// Normalised sinc, with sinc(0) = 1.
double normalized_sinc(double t);

nlohmann::json to_json(const NodeSequence& nodes);
/// Reads {"half_width", "perturbation_bound", "deltas"} (and optional "seed").
NodeSequence node_sequence_from_json(const nlohmann::json& doc);

}  // namespace pwinterp
