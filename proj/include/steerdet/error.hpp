#pragma once

#include <stdexcept>
#include <string>

namespace steerdet {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape problems: non-square input, dims that do not multiply out, cap exceeded.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument lies outside its admissible interval.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix fails a density-matrix, channel or POVM invariant.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& invariant, double residual);

  const std::string& invariant() const noexcept { return invariant_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string invariant_;
  double residual_;
};

/// Threshold search could not run or did not converge.
class SearchError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON files, CLI values).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace steerdet
