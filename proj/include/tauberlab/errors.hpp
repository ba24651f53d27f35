#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tauberlab {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument values (nonpositive parameter, point outside the domain, ...).
struct DomainError : Error {
  using Error::Error;
};

// A precondition stated by an operation does not hold for the given inputs.
struct PreconditionError : Error {
  using Error::Error;
};

// Not enough cached data to answer (depth too small, ...).
struct InsufficientDataError : Error {
  using Error::Error;
};

// The answer would require indices beyond the cached/extendable range.
struct TruncationError : Error {
  using Error::Error;
};

// A requested tolerance could not be met; carries the achieved estimate.
struct AccuracyError : Error {
  AccuracyError(const std::string& msg, double achieved)
      : Error(msg), achieved_error(achieved) {}
  double achieved_error;
};

// The operation needs capabilities the object does not have
// (derivative order, unsupported atom kind, ...).
struct CapabilityError : Error {
  using Error::Error;
};

// A checked mathematical invariant failed; carries the witness point.
struct InvariantViolation : Error {
  InvariantViolation(const std::string& msg, std::vector<double> w)
      : Error(msg), witness(std::move(w)) {}
  std::vector<double> witness;
};

// Cone-specific failures.
struct AcutenessError : Error {
  using Error::Error;
};
struct SolidityError : Error {
  using Error::Error;
};

// Mollifier grid cannot resolve the transition layer.
struct ResolutionError : Error {
  using Error::Error;
};

// The infinite product defining an ultrapolynomial diverges ((M.3)' fails).
struct DivergentProductError : Error {
  using Error::Error;
};

// Decay precondition of the inverse Laplace transform fails.
struct IntegrabilityError : Error {
  using Error::Error;
};

}  // namespace tauberlab
