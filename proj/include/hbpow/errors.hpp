#pragma once

#include <stdexcept>
#include <string>

namespace hbpow {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition violations: arguments outside the admissible range,
// parameter-class violations, evaluation at a pole.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A certified error bound exceeds the requested tolerance. The result is
// computable in principle; the caller has to raise the truncation order or
// loosen the tolerance.
class ToleranceError : public Error {
 public:
  explicit ToleranceError(const std::string& msg) : Error(msg) {}
};

// An iteration failed to converge within its budget, or a computation left
// the representable range.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

}  // namespace hbpow
