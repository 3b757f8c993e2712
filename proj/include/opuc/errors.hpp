#ifndef OPUC_ERRORS_HPP
#define OPUC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>
#include <complex>

namespace opuc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mathematical precondition violated (|alpha| >= 1, k >= 1, x <= 0, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Table-backed schedule queried outside its stored range.
struct OutOfRangeError : Error {
  using Error::Error;
};

/// Operation not defined for this variant (e.g. limit function of a Table).
struct UnsupportedVariantError : Error {
  using Error::Error;
};

/// Problem size exceeds the budget of an oracle-grade algorithm.
struct SizeError : Error {
  using Error::Error;
};

/// Evaluation point lies on the spectrum / support of the limit object.
struct OnSpectrumError : Error {
  using Error::Error;
};

/// Evaluation point too close to the support of a measure.
struct ProximityError : Error {
  using Error::Error;
};

/// Quadrature or iteration finished without reaching the requested bound.
struct ToleranceError : Error {
  ToleranceError(const std::string& what, double achieved_)
      : Error(what), achieved(achieved_) {}
  double achieved;
};

/// Both candidate branches of a two-valued function failed selection.
struct BranchSelectionError : Error {
  using Error::Error;
};

/// Both components of a scaled pair underflowed at the same point.
struct DegenerateEvaluationError : Error {
  using Error::Error;
};

/// Sign-change bracketing could not isolate the expected number of zeros.
struct ClusteringError : Error {
  using Error::Error;
};

/// Ratio denominator vanished to working precision.
struct NearZeroDenominatorError : Error {
  using Error::Error;
};

/// Root finder stopped early; carries the subset that did converge.
struct PartialResultError : Error {
  PartialResultError(const std::string& what,
                     std::vector<std::complex<double>> converged_)
      : Error(what), converged(std::move(converged_)) {}
  std::vector<std::complex<double>> converged;
};

/// Config file could not be parsed; message carries line/field detail.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace opuc

#endif  // OPUC_ERRORS_HPP
