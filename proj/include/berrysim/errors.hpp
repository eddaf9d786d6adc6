#pragma once

#include <stdexcept>
#include <string>

namespace berrysim {

// Base for every error the library raises. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument shape: wrong dimension, index out of range, unknown name.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented invariant (non-Hermitian, non-finite, H_r <= 0).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Ground state is degenerate within tolerance.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, double gap) : Error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Texture grid too coarse to resolve the winding.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Band gap closes somewhere on the momentum grid.
class GaplessError : public Error {
 public:
  GaplessError(const std::string& what, double gap) : Error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace berrysim
