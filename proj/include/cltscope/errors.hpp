#pragma once

#include <stdexcept>
#include <string>

namespace cltscope {

// Base class for all errors raised by the library. Subclasses distinguish
// the failure modes that callers may want to handle separately; everything
// carries a human-readable message.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside its documented domain (non-finite input, probability
// outside (0,1), non-positive tolerance, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Hermite degree above the supported cap.
class UnsupportedDegreeError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

// Distribution with zero variance.
class DegenerateDistributionError : public Error {
 public:
  using Error::Error;
};

// Lattice requested for a variant that has no lattice notion.
class LatticeUndefinedError : public Error {
 public:
  using Error::Error;
};

// Support not representable as small-denominator rationals.
class NonLatticeError : public Error {
 public:
  using Error::Error;
};

// A required moment (eta or rho) is absent from the summary.
class MissingMomentError : public Error {
 public:
  using Error::Error;
};

// LatticeSpec does not standardize consistently with the MomentSummary.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// Grid does not cover the region where the integrand is non-negligible.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// First density positive where the second is (numerically) zero.
class SupportMismatchError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; message names the offending line.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, long line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what) {}
  using Error::Error;
};

}  // namespace cltscope
