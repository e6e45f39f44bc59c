#pragma once

#include <stdexcept>
#include <string>

namespace thaumakit {

// Bad input: wrong dimension, non-state operator, malformed file, unknown name.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested operation is outside the supported envelope (e.g. stabilizer
// enumeration beyond two qutrits).
class UnsupportedDimension : public DomainError {
 public:
  explicit UnsupportedDimension(const std::string& what) : DomainError(what) {}
};

// The cone solver did not return an optimal point.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace thaumakit
