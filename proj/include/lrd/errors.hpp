#pragma once

#include <stdexcept>
#include <string>

namespace lrd {

// Parameter outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure could not produce a trustworthy result
// (non-convergent quadrature, singular covariance, degenerate series).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lrd
