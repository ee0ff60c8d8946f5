#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hconv {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)),
        expected_(expected),
        got_(got) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

// A violated precondition on an argument value (axis out of range, radius <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Raised by operations whose precondition is harmonicity of the input.
class NotHarmonic : public DomainError {
 public:
  NotHarmonic() : DomainError("input polynomial is not harmonic") {}
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class InsufficientMoments : public Error {
 public:
  InsufficientMoments(unsigned available, unsigned requested)
      : Error("moment table populated to degree " + std::to_string(available) +
              ", degree " + std::to_string(requested) + " requested") {}
};

class NonRadialProvider : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : Error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
        achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

// A growth certificate whose fitted bound fails on the holdout shell, or
// whose fitted exponent contradicts the family prediction.
class CertificateRejected : public Error {
 public:
  using Error::Error;
};

}  // namespace hconv
