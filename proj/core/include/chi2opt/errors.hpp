#pragma once

#include <stdexcept>
#include <string>

namespace chi2opt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input or configuration failed validation (exit code 1 in the CLI).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Any numerical failure (exit code 2 in the CLI).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double achieved_error)
      : NumericalError(what), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

class ResonanceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DiscretisationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ForbiddenProcessError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class KinematicSingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnsupportedOrderError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RenormalisationPolicyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace chi2opt
