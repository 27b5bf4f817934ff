#pragma once

#include <stdexcept>
#include <string>

namespace qcong {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact division left a nonzero remainder.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

// Evaluation of a negative power at zero.
class ZeroAtNegativeExponent : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

// Two residues from different quotient rings were combined.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class UnknownCase : public Error {
 public:
  using Error::Error;
};

}  // namespace qcong
