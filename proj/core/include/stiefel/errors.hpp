#pragma once

#include <stdexcept>
#include <string>

namespace stiefel {

/// Input violates a documented precondition (wrong structure, wrong shape,
/// non-finite entries, unsupported parameter).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix is not on the Stiefel manifold within tolerance.
class ValidationError : public PreconditionError {
 public:
  ValidationError(const std::string& what, double defect)
      : PreconditionError(what), defect_(defect) {}

  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// Input is structurally valid but lies outside the domain on which a map
/// (principal log, chart, inverse retraction) is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace stiefel
