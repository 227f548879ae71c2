#pragma once

#include <stdexcept>
#include <string>

namespace aeq {

// Malformed input: ragged rows, bad JSON, wrong shapes, out-of-range arguments.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed input that violates an operation's mathematical precondition,
// e.g. certifying a set that is not almost-equidistant.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Numerical backend failure (eigensolver did not converge, iteration cap hit).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aeq
