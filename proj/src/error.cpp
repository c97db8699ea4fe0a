#include "pwinterp/error.hpp"

#include <utility>

namespace pwinterp {

FactorizationError::FactorizationError(std::size_t pivot_index, double pivot_value)
    : NumericalError("Cholesky pivot " + std::to_string(pivot_index) +
                     " not positive after rounding (value " + std::to_string(pivot_value) + ")"),
      pivot_index_(pivot_index),
      pivot_value_(pivot_value) {}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

}  // namespace pwinterp
