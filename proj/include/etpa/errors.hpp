#pragma once

#include <stdexcept>
#include <string>

namespace etpa {

// Configuration / input validation problems. The CLI maps these to exit 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures inside a computation. The CLI maps these to exit 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutOfRangeError : NumericalError {
  explicit OutOfRangeError(const std::string& msg) : NumericalError(msg) {}
};

struct NoRootError : NumericalError {
  explicit NoRootError(const std::string& msg) : NumericalError(msg) {}
};

struct GridMismatchError : NumericalError {
  explicit GridMismatchError(const std::string& msg) : NumericalError(msg) {}
};

struct EmptyInputError : NumericalError {
  explicit EmptyInputError(const std::string& msg) : NumericalError(msg) {}
};

struct ZeroBaselineError : NumericalError {
  explicit ZeroBaselineError(const std::string& msg) : NumericalError(msg) {}
};

struct NoDipError : NumericalError {
  explicit NoDipError(const std::string& msg) : NumericalError(msg) {}
};

struct DegenerateError : NumericalError {
  explicit DegenerateError(const std::string& msg) : NumericalError(msg) {}
};

struct NegativeCorrectedError : NumericalError {
  explicit NegativeCorrectedError(const std::string& msg) : NumericalError(msg) {}
};

struct EmptyBackgroundError : NumericalError {
  explicit EmptyBackgroundError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace etpa
