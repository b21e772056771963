#pragma once

#include <stdexcept>
#include <string>

namespace deloc {

// Input problems: bad specs, wrong flavors, failed preconditions. CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failures while computing on valid input. CLI exit code 3.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StructuralError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class FlavorError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegreeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotIdempotentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class GapError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RadiusExceeded : public ComputationError {
 public:
  RadiusExceeded(const std::string& what, std::size_t radius)
      : ComputationError(what + " (radius " + std::to_string(radius) + ")"), radius_(radius) {}
  std::size_t radius() const { return radius_; }

 private:
  std::size_t radius_;
};

class CapacityError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class PermutationCapError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class UnsupportedOrder : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class WitnessNotFound : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class ConvergenceFailure : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace deloc
