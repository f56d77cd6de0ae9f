#include "pcurv/truncmat.hpp"

#include <algorithm>

namespace pcurv {

TruncPolyMat::TruncPolyMat(unsigned s, unsigned e, OptModulus m)
    : s_(s), e_(e), mod_(std::move(m)),
      entries_(static_cast<std::size_t>(s) * s, TruncPoly::zero(e, mod_)) {
  if (s_ == 0) throw ContractError("matrix dimension must be >= 1");
}

TruncPolyMat TruncPolyMat::identity(unsigned s, unsigned e, OptModulus m) {
  TruncPolyMat r(s, e, std::move(m));
  for (unsigned i = 0; i < s; ++i) r.set(i, i, TruncPoly::one(e, r.mod_));
  return r;
}

void TruncPolyMat::set(unsigned i, unsigned j, TruncPoly v) {
  if (v.trunc_order() != e_ || !same_modulus(v.modulus(), mod_)) {
    throw StructuralError("matrix entry with foreign truncation order or modulus");
  }
  entries_[i * s_ + j] = std::move(v);
}

bool TruncPolyMat::is_identity() const {
  for (unsigned i = 0; i < s_; ++i) {
    for (unsigned j = 0; j < s_; ++j) {
      const TruncPoly& v = at(i, j);
      if (i == j ? !v.is_one() : !v.is_zero()) return false;
    }
  }
  return true;
}

std::size_t TruncPolyMat::max_bit_size() const {
  std::size_t b = 0;
  for (const auto& v : entries_) b = std::max(b, v.max_bit_size());
  return b;
}

TruncPolyMat TruncPolyMat::scaled(const BigInt& c) const {
  TruncPolyMat r(s_, e_, mod_);
  for (unsigned i = 0; i < s_; ++i) {
    for (unsigned j = 0; j < s_; ++j) r.set(i, j, at(i, j).scaled(c));
  }
  return r;
}

TruncPolyMat mat_mul(const TruncPolyMat& a, const TruncPolyMat& b) {
  if (a.dim() != b.dim() || a.trunc_order() != b.trunc_order() ||
      !same_modulus(a.modulus(), b.modulus())) {
    throw StructuralError("mat_mul: mismatched dimension, order or modulus");
  }
  const unsigned s = a.dim();
  TruncPolyMat r(s, a.trunc_order(), a.modulus());
  for (unsigned i = 0; i < s; ++i) {
    for (unsigned j = 0; j < s; ++j) {
      TruncPoly acc = TruncPoly::zero(a.trunc_order(), a.modulus());
      for (unsigned k = 0; k < s; ++k) {
        const TruncPoly& x = a.at(i, k);
        const TruncPoly& y = b.at(k, j);
        if (x.is_zero() || y.is_zero()) continue;
        acc += poly_mul_trunc(x, y);
      }
      r.set(i, j, std::move(acc));
    }
  }
  return r;
}

TruncPolyMat mat_reduce(const TruncPolyMat& a, const Modulus& m) {
  TruncPolyMat r(a.dim(), a.trunc_order(), m);
  for (unsigned i = 0; i < a.dim(); ++i) {
    for (unsigned j = 0; j < a.dim(); ++j) r.set(i, j, a.at(i, j).reduced(m));
  }
  return r;
}

}  // namespace pcurv
