#ifndef PHASEJUMP_ERROR_HPP
#define PHASEJUMP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace phasejump {

/// Input violates a precondition (bad parameter, malformed config, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical breakdown inside a solver (step underflow, overflow guard, unsettled tail).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem / stream failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace phasejump

#endif  // PHASEJUMP_ERROR_HPP
