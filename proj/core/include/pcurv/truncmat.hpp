#ifndef PCURV_TRUNCMAT_HPP
#define PCURV_TRUNCMAT_HPP

#include <vector>

#include "pcurv/truncpoly.hpp"

namespace pcurv {

// Square matrix over a truncated polynomial ring; all entries share the
// truncation order and the (optional) modulus.
class TruncPolyMat {
public:
  TruncPolyMat(unsigned s, unsigned e, OptModulus m = {});
  static TruncPolyMat identity(unsigned s, unsigned e, OptModulus m = {});

  unsigned dim() const { return s_; }
  unsigned trunc_order() const { return e_; }
  const OptModulus& modulus() const { return mod_; }

  const TruncPoly& at(unsigned i, unsigned j) const { return entries_[i * s_ + j]; }
  void set(unsigned i, unsigned j, TruncPoly v);

  bool is_identity() const;
  std::size_t max_bit_size() const;

  TruncPolyMat scaled(const BigInt& c) const;

  friend bool operator==(const TruncPolyMat& a, const TruncPolyMat& b) {
    return a.s_ == b.s_ && a.e_ == b.e_ && same_modulus(a.mod_, b.mod_) &&
           a.entries_ == b.entries_;
  }

private:
  unsigned s_;
  unsigned e_;
  OptModulus mod_;
  std::vector<TruncPoly> entries_;
};

// Exact product in the truncated ring (order is load-bearing).
TruncPolyMat mat_mul(const TruncPolyMat& a, const TruncPolyMat& b);

// Entry-wise reduction into [0, m); m must divide the current modulus if any.
TruncPolyMat mat_reduce(const TruncPolyMat& a, const Modulus& m);

}  // namespace pcurv

#endif
