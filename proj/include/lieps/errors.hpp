#pragma once

#include <stdexcept>
#include <string>

namespace lieps {

/// Operands have incompatible or unsupported dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tolerance or budget argument cannot be honoured.
class ToleranceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested operation does not apply to this input (e.g. a witness for a
/// matrix that has none).
class InvalidTarget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two independent evaluations of the same quantity disagree.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by match_spectra when the pairwise distances already disagree.
class NoIsometry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by match_spectra when distances agree but neither affine form fits.
class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (JSON shape, non-finite entries, ...).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lieps
