#pragma once

#include <stdexcept>
#include <string>

namespace scq {

// A parameter falls outside the admissible range of a construction
// (theta constraints, family parameter ranges, malformed requests).
class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation could not deliver its accuracy contract: poles, singular
// systems, non-convergent expansions.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace scq
