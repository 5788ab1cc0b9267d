#pragma once

#include <stdexcept>
#include <string>

namespace nhsense {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument outside the physical domain (negative rates, bad indices).
class DomainError : public Error {
 public:
  using Error::Error;
};

// w <= delta, or a dynamical matrix with eigenvalues in the right half plane.
class StabilityError : public Error {
 public:
  using Error::Error;
};

// Evaluation on (or numerically at) an undamped resonance.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Eigensolver failure, bracket failure, overflow.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

}  // namespace nhsense
