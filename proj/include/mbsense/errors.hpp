#pragma once

#include <stdexcept>
#include <string>

namespace mbsense {

// Shape/length mismatch between operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A typed precondition was violated (e.g. matrix not Hermitian).
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Scenario field failed validation; carries the offending field name.
struct ValidationError : std::invalid_argument {
  ValidationError(std::string field_name, const std::string& message)
      : std::invalid_argument(field_name + ": " + message), field(std::move(field_name)) {}
  std::string field;
};

// Linear system remained unsolvable after the ridge retry.
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dB normalization impossible (zero mainlobe).
struct NormalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mbsense
