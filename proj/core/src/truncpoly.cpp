#include "pcurv/truncpoly.hpp"

#include <algorithm>

namespace pcurv {

namespace {
const BigInt kZero = 0;

// A truncated schoolbook product needs about e^2/2 integer products of the
// coefficient size, a packed (Kronecker) one a single product of ~2e times
// that size.  Packing wins once both the coefficient count and the operand
// size clear these thresholds; below them GMP's own subquadratic ladder on
// the per-coefficient products is faster.  Measured in benchmarks/bm_kernel.
constexpr std::size_t kKroneckerMinCoeffs = 5;
constexpr std::size_t kKroneckerBits = 1u << 17;
}  // namespace

Modulus::Modulus(BigInt v) {
  if (v < 2) throw ContractError("modulus must be >= 2");
  value_ = std::make_shared<const BigInt>(std::move(v));
}

BigInt scalar_inv_mod(const BigInt& c, const Modulus& p) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), c.get_mpz_t(), p.value().get_mpz_t()) == 0) {
    throw NotInvertible(to_decimal(c) + " is not invertible mod " +
                        to_decimal(p.value()));
  }
  return r;
}

TruncPoly::TruncPoly(unsigned e, std::vector<BigInt> coeffs, OptModulus m)
    : e_(e), coeffs_(std::move(coeffs)), mod_(std::move(m)) {
  if (e_ == 0) throw ContractError("truncation order must be >= 1");
  canonicalize();
}

void TruncPoly::canonicalize() {
  if (coeffs_.size() > e_) coeffs_.resize(e_);
  if (mod_) {
    const BigInt& m = mod_->value();
    for (auto& c : coeffs_) {
      if (c < 0 || c >= m) c = mod_floor(c, m);
    }
  }
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

TruncPoly TruncPoly::zero(unsigned e, OptModulus m) {
  return TruncPoly(e, {}, std::move(m));
}

TruncPoly TruncPoly::one(unsigned e, OptModulus m) {
  return TruncPoly(e, {BigInt(1)}, std::move(m));
}

TruncPoly TruncPoly::from_intpoly(const IntPoly& p, unsigned e, OptModulus m) {
  return TruncPoly(e, p.coeffs(), std::move(m));
}

const BigInt& TruncPoly::coeff(std::size_t j) const {
  return j < coeffs_.size() ? coeffs_[j] : kZero;
}

bool TruncPoly::is_one() const {
  return coeffs_.size() == 1 && coeffs_[0] == 1;
}

std::size_t TruncPoly::max_bit_size() const {
  std::size_t b = 0;
  for (const auto& c : coeffs_) b = std::max(b, bit_size(c));
  return b;
}

TruncPoly TruncPoly::reduced(const Modulus& m) const {
  if (mod_ && !mpz_divisible_p(mod_->value().get_mpz_t(), m.value().get_mpz_t())) {
    throw ContractError("reduction modulus does not divide the current one");
  }
  return TruncPoly(e_, coeffs_, m);
}

TruncPoly TruncPoly::scaled(const BigInt& c) const {
  std::vector<BigInt> v(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i] * c;
  return TruncPoly(e_, std::move(v), mod_);
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& o) {
  if (e_ != o.e_ || !same_modulus(mod_, o.mod_)) {
    throw StructuralError("TruncPoly add: mismatched truncation order or modulus");
  }
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  canonicalize();
  return *this;
}

TruncPoly& TruncPoly::operator-=(const TruncPoly& o) {
  if (e_ != o.e_ || !same_modulus(mod_, o.mod_)) {
    throw StructuralError("TruncPoly sub: mismatched truncation order or modulus");
  }
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  canonicalize();
  return *this;
}

namespace {

std::size_t ceil_log2(std::size_t n) {
  std::size_t b = 0;
  while ((std::size_t{1} << b) < n) ++b;
  return b;
}

// Truncated product via Kronecker substitution: evaluate both factors at
// 2^slot, multiply once, then read back balanced base-2^slot digits.  The
// slot width is chosen so every product coefficient fits strictly below
// 2^{slot-1}, which makes the signed digit extraction unambiguous.
std::vector<BigInt> kronecker_mul(const std::vector<BigInt>& a,
                                  const std::vector<BigInt>& b,
                                  std::size_t bits_a, std::size_t bits_b,
                                  std::size_t want) {
  const std::size_t slot =
      bits_a + bits_b + ceil_log2(std::min(a.size(), b.size())) + 2;

  auto pack = [&](const std::vector<BigInt>& v) {
    BigInt acc = 0;
    for (std::size_t i = v.size(); i-- > 0;) {
      mpz_mul_2exp(acc.get_mpz_t(), acc.get_mpz_t(), slot);
      acc += v[i];
    }
    return acc;
  };

  BigInt prod = pack(a) * pack(b);

  std::vector<BigInt> out(want);
  BigInt digit, half;
  mpz_setbit(half.get_mpz_t(), static_cast<mp_bitcnt_t>(slot - 1));
  for (std::size_t i = 0; i < want; ++i) {
    if (sgn(prod) == 0) break;
    mpz_fdiv_r_2exp(digit.get_mpz_t(), prod.get_mpz_t(), slot);
    if (digit >= half) {
      // negative coefficient stored as 2^slot + c
      mpz_sub(digit.get_mpz_t(), digit.get_mpz_t(), half.get_mpz_t());
      mpz_sub(digit.get_mpz_t(), digit.get_mpz_t(), half.get_mpz_t());
    }
    prod -= digit;
    mpz_fdiv_q_2exp(prod.get_mpz_t(), prod.get_mpz_t(), slot);
    out[i] = digit;
  }
  return out;
}

}  // namespace

TruncPoly poly_mul_trunc(const TruncPoly& a, const TruncPoly& b) {
  if (a.trunc_order() != b.trunc_order() || !same_modulus(a.modulus(), b.modulus())) {
    throw StructuralError("poly_mul_trunc: mismatched truncation order or modulus");
  }
  const unsigned e = a.trunc_order();
  if (a.is_zero() || b.is_zero()) return TruncPoly::zero(e, a.modulus());

  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  const std::size_t want = std::min<std::size_t>(e, ca.size() + cb.size() - 1);

  const std::size_t bits_a = a.max_bit_size();
  const std::size_t bits_b = b.max_bit_size();
  if (std::min(ca.size(), cb.size()) >= kKroneckerMinCoeffs &&
      bits_a + bits_b >= kKroneckerBits) {
    return TruncPoly(e, kronecker_mul(ca, cb, bits_a, bits_b, want), a.modulus());
  }

  std::vector<BigInt> out(want);
  for (std::size_t i = 0; i < ca.size() && i < want; ++i) {
    if (sgn(ca[i]) == 0) continue;
    const std::size_t jmax = std::min(cb.size(), want - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), ca[i].get_mpz_t(), cb[j].get_mpz_t());
    }
  }
  return TruncPoly(e, std::move(out), a.modulus());
}

}  // namespace pcurv
