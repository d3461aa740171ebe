#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fmbound {

// Precondition violations: bad exponent ranges, model mismatches,
// operations applied to a model kind that cannot support them.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite data or a failed matrix factorization.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration (CLI configs, experiment
// setups that cannot be executed, missing input files).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Representation-table validation failure. Carries which check failed and
// the label of the offending irrep (empty for table-level problems).
class ValidationError : public std::runtime_error {
 public:
  enum class Kind {
    MalformedTable,
    DimensionSum,
    NonUnitary,
    Homomorphism,
    Orthogonality,
  };

  ValidationError(Kind kind, std::string label, const std::string& message)
      : std::runtime_error(message), kind_(kind), label_(std::move(label)) {}

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

 private:
  Kind kind_;
  std::string label_;
};

}  // namespace fmbound
