#ifndef CASIMIR_ERRORS_HPP
#define CASIMIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace casimir {

/// Malformed or inconsistent configuration input (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Quadrature or series evaluation failed to reach its tolerance (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested operation is undefined for the given parameter combination,
/// e.g. the asymptotic reflection coefficients with a nonzero mass gap.
class UnsupportedError : public std::invalid_argument {
 public:
  explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace casimir

#endif
