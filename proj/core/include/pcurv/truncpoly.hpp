#ifndef PCURV_TRUNCPOLY_HPP
#define PCURV_TRUNCPOLY_HPP

#include <memory>
#include <optional>
#include <vector>

#include "pcurv/bigint.hpp"
#include "pcurv/intpoly.hpp"

namespace pcurv {

// A residue-ring modulus (a prime p or a tree product of primes), >= 2.
// Shared storage: matrices copy the same modulus into every entry.
class Modulus {
public:
  explicit Modulus(BigInt v);
  const BigInt& value() const { return *value_; }
  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.value_ == b.value_ || *a.value_ == *b.value_;
  }

private:
  std::shared_ptr<const BigInt> value_;
};

using OptModulus = std::optional<Modulus>;

inline bool same_modulus(const OptModulus& a, const OptModulus& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a.has_value() || *a == *b;
}

// c^{-1} mod p for prime p. Throws NotInvertible when gcd(c, p) != 1,
// which is the signal that a prime must be excluded.
BigInt scalar_inv_mod(const BigInt& c, const Modulus& p);

// Element of Z[t]/t^e or (Z/m)[t]/t^e: coefficients of t^0..t^{e-1},
// trailing zeroes trimmed, residues canonical in [0, m) when m is present.
class TruncPoly {
public:
  TruncPoly(unsigned e, std::vector<BigInt> coeffs, OptModulus m = {});

  static TruncPoly zero(unsigned e, OptModulus m = {});
  static TruncPoly one(unsigned e, OptModulus m = {});
  static TruncPoly from_intpoly(const IntPoly& p, unsigned e, OptModulus m = {});

  unsigned trunc_order() const { return e_; }
  const OptModulus& modulus() const { return mod_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& coeff(std::size_t j) const;
  IntPoly to_intpoly() const { return IntPoly(coeffs_); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  std::size_t max_bit_size() const;

  TruncPoly reduced(const Modulus& m) const;
  TruncPoly scaled(const BigInt& c) const;

  TruncPoly& operator+=(const TruncPoly& o);
  TruncPoly& operator-=(const TruncPoly& o);
  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
  friend bool operator==(const TruncPoly& a, const TruncPoly& b) {
    return a.e_ == b.e_ && same_modulus(a.mod_, b.mod_) && a.coeffs_ == b.coeffs_;
  }

private:
  void canonicalize();
  unsigned e_;
  std::vector<BigInt> coeffs_;
  OptModulus mod_;
};

// Product truncated to t^e. Schoolbook below a size threshold; above it the
// factors are packed into single integers (Kronecker substitution, balanced
// signed digits) so one GMP product does the work.
TruncPoly poly_mul_trunc(const TruncPoly& a, const TruncPoly& b);

}  // namespace pcurv

#endif
