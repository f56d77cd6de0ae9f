#ifndef PCURV_BIGINT_HPP
#define PCURV_BIGINT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

#include "pcurv/errors.hpp"

namespace pcurv {

// Arbitrary-precision signed integer, canonical sign + magnitude form.
// GNU MP supplies the representation and the multiplication ladder
// (schoolbook -> Karatsuba -> Toom -> FFT, switching at its tuned limb
// thresholds), which keeps n-bit products subquadratic for large n.
using BigInt = mpz_class;

inline BigInt bigint_from_decimal(const std::string& s) {
  mpz_class v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0) {
    throw FormatError("not a decimal integer: \"" + s + "\"");
  }
  return v;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(); }

// Number of bits of |v|; 0 for v = 0.
inline std::size_t bit_size(const BigInt& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Canonical residue of v in [0, m); m >= 1.
inline BigInt mod_floor(const BigInt& v, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool fits_u64(const BigInt& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
  std::uint64_t lo = mpz_getlimbn(v.get_mpz_t(), 0);
  return sgn(v) == 0 ? 0 : lo;
}

}  // namespace pcurv

#endif
