#pragma once

#include <stdexcept>
#include <string>

namespace lzslab {

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Left/right eigenvector normalisation <uL|uR> underflows (exceptional point).
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

struct ExceptionalPointError : std::runtime_error {
  explicit ExceptionalPointError(const std::string& what) : std::runtime_error(what) {}
};

struct StepUnderflow : std::runtime_error {
  explicit StepUnderflow(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureFailure : std::runtime_error {
  explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroIntensity : std::runtime_error {
  explicit ZeroIntensity(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent run configuration (CLI exit code 2).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lzslab
