#ifndef PCURV_INTPOLY_HPP
#define PCURV_INTPOLY_HPP

#include <string>
#include <vector>

#include "pcurv/bigint.hpp"

namespace pcurv {

// Dense univariate polynomial over the integers, coefficient index = degree.
// The zero polynomial is the empty list; otherwise the top coefficient is
// nonzero (degree() returns -1 for zero).
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static IntPoly constant(BigInt c);
  static IntPoly monomial(BigInt c, std::size_t deg);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  // Coefficient of x^i, zero beyond the degree.
  const BigInt& coeff(std::size_t i) const;
  const BigInt& leading() const;

  BigInt eval(const BigInt& x) const;
  IntPoly derivative() const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly operator-() const;
  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  IntPoly scaled(const BigInt& c) const;

  // Coefficient-wise canonical residues in [0, m).
  IntPoly reduced_mod(const BigInt& m) const;

  std::string to_string(const std::string& var = "x") const;

private:
  void trim();
  std::vector<BigInt> coeffs_;
};

}  // namespace pcurv

#endif
