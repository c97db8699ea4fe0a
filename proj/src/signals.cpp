#include "pwinterp/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pwinterp/error.hpp"
#include "pwinterp/quadrature.hpp"

namespace pwinterp {

namespace detail {

class SignalModel {
public:
    virtual ~SignalModel() = default;
    virtual std::complex<double> spectrum(double xi) const = 0;
    virtual std::complex<double> value(double x) const = 0;
    virtual double l2_norm() const = 0;
    virtual std::vector<double> breakpoints() const = 0;
    virtual bool is_real() const = 0;
    virtual std::string description() const = 0;
};

}  // namespace detail

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

std::vector<double> normalize_breaks(std::vector<double> breaks) {
    breaks.push_back(-kPi);
    breaks.push_back(kPi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    return breaks;
}

class SincModel final : public detail::SignalModel {
public:
    SincModel(double shift, double bandwidth) : shift_(shift), bandwidth_(bandwidth) {}

    std::complex<double> spectrum(double xi) const override {
        if (std::abs(xi) > bandwidth_ * kPi) return 0.0;
        return std::polar(kInvSqrt2Pi / bandwidth_, -shift_ * xi);
    }
    std::complex<double> value(double x) const override {
        const double t = bandwidth_ * (x - shift_);
        if (t == 0.0) return 1.0;
        return std::sin(kPi * t) / (kPi * t);
    }
    double l2_norm() const override { return 1.0 / std::sqrt(bandwidth_); }
    std::vector<double> breakpoints() const override {
        return normalize_breaks({-bandwidth_ * kPi, bandwidth_ * kPi});
    }
    bool is_real() const override { return true; }
    std::string description() const override {
        std::ostringstream os;
        os << "sinc(shift=" << shift_ << ", bandwidth=" << bandwidth_ << ")";
        return os.str();
    }

private:
    double shift_;
    double bandwidth_;
};

class PiecewiseModel final : public detail::SignalModel {
public:
    PiecewiseModel(std::vector<SpectrumPiece> pieces, double tolerance)
        : pieces_(std::move(pieces)), tolerance_(tolerance) {
        std::sort(pieces_.begin(), pieces_.end(),
                  [](const SpectrumPiece& a, const SpectrumPiece& b) { return a.lower < b.lower; });
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            const auto& p = pieces_[i];
            if (!(p.lower < p.upper)) throw DomainError("spectrum piece " + std::to_string(i) + " is empty or reversed");
            if (p.lower < -kPi - 1e-12 || p.upper > kPi + 1e-12)
                throw DomainError("spectrum piece " + std::to_string(i) + " leaves the band [-pi, pi]");
            if (i > 0 && p.lower < pieces_[i - 1].upper)
                throw DomainError("spectrum pieces " + std::to_string(i - 1) + " and " + std::to_string(i) + " overlap");
            for (double c : p.coefficients)
                if (!std::isfinite(c)) throw DomainError("spectrum piece " + std::to_string(i) + " has a non-finite coefficient");
        }
        for (auto& p : pieces_) {
            p.lower = std::max(p.lower, -kPi);
            p.upper = std::min(p.upper, kPi);
        }
        real_ = check_even();
    }

    std::complex<double> spectrum(double xi) const override {
        for (const auto& p : pieces_)
            if (xi >= p.lower && xi <= p.upper) return p(xi);
        return 0.0;
    }

    std::complex<double> value(double x) const override {
        double re = 0.0;
        double im = 0.0;
        for (const auto& p : pieces_) {
            re += quadrature::integrate_doubling([&](double xi) { return p(xi) * std::cos(x * xi); }, p.lower, p.upper,
                                                 tolerance_, 0.0)
                      .value;
            if (!real_)
                im += quadrature::integrate_doubling([&](double xi) { return p(xi) * std::sin(x * xi); }, p.lower,
                                                     p.upper, tolerance_, 0.0)
                          .value;
        }
        return {kInvSqrt2Pi * re, kInvSqrt2Pi * im};
    }

    double l2_norm() const override {
        double total = 0.0;
        for (const auto& p : pieces_) {
            const auto& c = p.coefficients;
            for (std::size_t m = 0; m < c.size(); ++m)
                for (std::size_t n = 0; n < c.size(); ++n) {
                    const int e = static_cast<int>(m + n + 1);
                    total += c[m] * c[n] * (std::pow(p.upper, e) - std::pow(p.lower, e)) / e;
                }
        }
        return std::sqrt(std::max(total, 0.0));
    }

    std::vector<double> breakpoints() const override {
        std::vector<double> b;
        for (const auto& p : pieces_) {
            b.push_back(p.lower);
            b.push_back(p.upper);
        }
        return normalize_breaks(std::move(b));
    }

    bool is_real() const override { return real_; }

    std::string description() const override {
        std::ostringstream os;
        os << "piecewise spectrum (" << pieces_.size() << " pieces)";
        return os.str();
    }

private:
    // Real coefficients give a real signal exactly when the spectrum is even.
    bool check_even() const {
        double scale = 0.0;
        const auto probe = [&](auto&& visit) {
            for (const auto& p : pieces_)
                for (int i = 0; i <= 64; ++i) visit(p.lower + (p.upper - p.lower) * (i + 0.5) / 65.0);
        };
        probe([&](double xi) { scale = std::max(scale, std::abs(spectrum(xi))); });
        bool even = true;
        probe([&](double xi) {
            if (std::abs(spectrum(xi) - spectrum(-xi)) > 1e-13 * std::max(scale, 1.0)) even = false;
        });
        return even;
    }

    std::vector<SpectrumPiece> pieces_;
    double tolerance_;
    bool real_ = true;
};

class CombinationModel final : public detail::SignalModel {
public:
    explicit CombinationModel(std::vector<std::pair<double, PWSignal>> terms) : terms_(std::move(terms)) {}

    std::complex<double> spectrum(double xi) const override {
        std::complex<double> s = 0.0;
        for (const auto& [w, sig] : terms_) s += w * sig.spectrum(xi);
        return s;
    }
    std::complex<double> value(double x) const override {
        std::complex<double> s = 0.0;
        for (const auto& [w, sig] : terms_) s += w * sig.value(x);
        return s;
    }
    double l2_norm() const override {
        const auto breaks = breakpoints();
        const auto energy = quadrature::integrate_piecewise([this](double xi) { return std::norm(spectrum(xi)); },
                                                            breaks, 1e-15, 1e-14);
        return std::sqrt(energy.value);
    }
    std::vector<double> breakpoints() const override {
        std::vector<double> b;
        for (const auto& [w, sig] : terms_) {
            const auto part = sig.breakpoints();
            b.insert(b.end(), part.begin(), part.end());
        }
        return normalize_breaks(std::move(b));
    }
    bool is_real() const override {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
    }
    std::string description() const override {
        std::ostringstream os;
        os << "combination of " << terms_.size() << " signals";
        return os.str();
    }

private:
    std::vector<std::pair<double, PWSignal>> terms_;
};

}  // namespace

double SpectrumPiece::operator()(double xi) const {
    double v = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * xi + *it;
    return v;
}

PWSignal::PWSignal(std::shared_ptr<const detail::SignalModel> model) : model_(std::move(model)) {}

std::complex<double> PWSignal::spectrum(double xi) const {
    if (std::abs(xi) > kPi) return 0.0;
    return model_->spectrum(xi);
}

std::complex<double> PWSignal::value(double x) const { return model_->value(x); }

double PWSignal::real_value(double x) const {
    if (!model_->is_real()) throw DomainError("signal " + model_->description() + " is not real-valued");
    return model_->value(x).real();
}

double PWSignal::l2_norm() const { return model_->l2_norm(); }
std::vector<double> PWSignal::breakpoints() const { return model_->breakpoints(); }
bool PWSignal::is_real() const { return model_->is_real(); }
std::string PWSignal::description() const { return model_->description(); }

PWSignal sinc_signal(double shift, double bandwidth) {
    if (!(bandwidth > 0.0 && bandwidth <= 1.0)) throw DomainError("sinc bandwidth must lie in (0, 1]");
    if (!std::isfinite(shift)) throw DomainError("sinc shift must be finite");
    return PWSignal(std::make_shared<const SincModel>(shift, bandwidth));
}

PWSignal zero_signal() { return PWSignal(std::make_shared<const PiecewiseModel>(std::vector<SpectrumPiece>{}, 1e-12)); }

PWSignal spectral_signal(std::vector<SpectrumPiece> pieces, double tolerance) {
    return PWSignal(std::make_shared<const PiecewiseModel>(std::move(pieces), tolerance));
}

PWSignal triangle_signal() {
    return spectral_signal({{-kPi, 0.0, {1.0, 1.0 / kPi}}, {0.0, kPi, {1.0, -1.0 / kPi}}});
}

PWSignal edge_signal(double width) {
    if (!(width > 0.0 && width <= kPi)) throw DomainError("edge width must lie in (0, pi]");
    if (width == kPi) return spectral_signal({{-kPi, kPi, {1.0}}});
    return spectral_signal({{-kPi, -kPi + width, {1.0}}, {kPi - width, kPi, {1.0}}});
}

PWSignal combine(std::vector<std::pair<double, PWSignal>> terms) {
    return PWSignal(std::make_shared<const CombinationModel>(std::move(terms)));
}

SampleSet sample(const PWSignal& signal, const NodeSequence& nodes) {
    return sample(signal, nodes, riesz_bounds(nodes));
}

SampleSet sample(const PWSignal& signal, const NodeSequence& nodes, const RieszBounds& bounds) {
    SampleSet out;
    out.values.reserve(nodes.size());
    for (double x : nodes.nodes()) {
        const double v = signal.real_value(x);
        out.values.push_back(v);
        out.l2_mass += v * v;
    }
    const double norm = signal.l2_norm();
    out.ceiling = bounds.upper * norm * norm;
    out.within_ceiling = std::isfinite(out.l2_mass) && out.l2_mass <= out.ceiling * (1.0 + 1e-12);
    return out;
}

}  // namespace pwinterp
