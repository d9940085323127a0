#pragma once

#include <stdexcept>
#include <string>

namespace ddesim {

/// Shape or index arguments that do not fit the operator/layout they are used with.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter values that violate a model invariant (negative rates, n_max = 0, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a result that meets its contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Liouvillian kernel is more than one-dimensional, so the steady state is not unique.
class DegenerateSteadyState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A quantum jump was requested on an emitter with no excited-state population.
class EmitterDark : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The correlation spectrum has no peak standing out of the noise floor.
class NoOscillation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ddesim
