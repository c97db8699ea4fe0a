#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pwinterp {

/// Argument outside the mathematical domain of an operation (parameter below
/// the family's range, r <= 0 for K1, perturbation at or beyond 1/4, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its accuracy contract.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cholesky breakdown: the pivot at `pivot_index` fell to or below the floor.
class FactorizationError : public NumericalError {
public:
    FactorizationError(std::size_t pivot_index, double pivot_value);

    std::size_t pivot_index() const noexcept { return pivot_index_; }
    double pivot_value() const noexcept { return pivot_value_; }

private:
    std::size_t pivot_index_;
    double pivot_value_;
};

/// Invalid experiment configuration. `field` is a dotted path into the
/// config document ("kernel.ladder[2]"), or empty for syntax errors.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message);

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace pwinterp
