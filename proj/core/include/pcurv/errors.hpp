#ifndef PCURV_ERRORS_HPP
#define PCURV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcurv {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched shapes: truncation orders, moduli, matrix dimensions.
class StructuralError : public Error {
public:
  using Error::Error;
};

// A value-level precondition was violated (e.g. reducing by a non-divisor).
class ContractError : public Error {
public:
  using Error::Error;
};

// gcd(value, modulus) != 1.
class NotInvertible : public Error {
public:
  using Error::Error;
};

// Leading coefficient is not a nonzero integer constant; a shift is missing.
class NormalizationRequired : public Error {
public:
  using Error::Error;
};

// The Y^k division of the reverse isomorphism is inexact.
class NonzeroLowYCoefficients : public Error {
public:
  using Error::Error;
};

// A coefficient-wise exact division left a nonzero remainder.
class ExactDivisionFailed : public Error {
public:
  using Error::Error;
};

// The operator does not reduce mod p (its leading coefficient vanishes).
class NotReducible : public Error {
public:
  using Error::Error;
};

// Malformed input files or option values.
class FormatError : public Error {
public:
  using Error::Error;
};

}  // namespace pcurv

#endif
