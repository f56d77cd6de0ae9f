#ifndef PCURV_ORE_HPP
#define PCURV_ORE_HPP

#include <vector>

#include "pcurv/intpoly.hpp"

namespace pcurv {

// Differential operator sum f_j(x) d^j with integer polynomial coefficients;
// index = power of d, top coefficient nonzero (the zero operator is the
// empty list, kept representable so products close).
class OperatorX {
public:
  OperatorX() = default;
  explicit OperatorX(std::vector<IntPoly> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  bool is_zero() const { return coeffs_.empty(); }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<IntPoly>& coeffs() const { return coeffs_; }
  const IntPoly& coeff(std::size_t j) const;
  const IntPoly& leading() const;

  // max degree in x over all coefficients (0 for the zero operator)
  unsigned max_x_degree() const;

  friend bool operator==(const OperatorX& a, const OperatorX& b) {
    return a.coeffs_ == b.coeffs_;
  }

private:
  std::vector<IntPoly> coeffs_;
};

// Laurent operator sum c_j(theta) d^j for j in [-k, m]; k >= 0 is minimal
// (either k = 0 or the coefficient of d^{-k} is nonzero) and the top
// coefficient is nonzero.  coeff_shifted(i) is the coefficient of d^{i-k},
// i.e. the i-th coefficient of the right-normalized operator L * d^k.
class OperatorTheta {
public:
  // the constant operator 1
  OperatorTheta() : k_(0), coeffs_{IntPoly::constant(1)} {}
  OperatorTheta(unsigned k, std::vector<IntPoly> coeffs);

  unsigned laurent_depth() const { return k_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1 - static_cast<int>(k_); }
  // dimension of the companion matrix of L * d^k
  unsigned s() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
  const IntPoly& coeff_shifted(std::size_t i) const { return coeffs_[i]; }
  const std::vector<IntPoly>& coeffs_shifted() const { return coeffs_; }
  const IntPoly& leading() const { return coeffs_.back(); }
  unsigned max_theta_degree() const;

  friend bool operator==(const OperatorTheta& a, const OperatorTheta& b) {
    return a.k_ == b.k_ && a.coeffs_ == b.coeffs_;
  }

private:
  unsigned k_;
  std::vector<IntPoly> coeffs_;
};

// Companion matrix of the theta-side operator, scaled by its constant
// leading coefficient l_theta: subdiagonal entries l_theta, last column
// -c_i(theta), zeros elsewhere (columns act on the basis 1, d, ..., d^{s-1}).
struct CompanionMat {
  unsigned s;
  BigInt l_theta;
  std::vector<IntPoly> entries;  // row-major s x s

  const IntPoly& at(unsigned i, unsigned j) const { return entries[i * s + j]; }
  unsigned max_theta_degree() const;
  std::size_t max_bit_size() const;
};

// Noncommutative product: d f = f d + f'.
OperatorX op_mul(const OperatorX& a, const OperatorX& b);

// Argument translation x -> x + a on every coefficient.
OperatorX shift(const OperatorX& l, const BigInt& a);

// First b in the scan order 0, 1, -1, 2, -2, ... with l_x(b) != 0.
BigInt pick_shift(const IntPoly& l_x);

// The x -> theta isomorphism: x^i d^j maps to p_i(theta) d^{j-i} with
// p_i the falling factorial theta (theta-1) ... (theta-i+1).
OperatorTheta phi(const OperatorX& l);

// Product on the theta side, using d^i g(theta) = g(theta+i) d^i.
OperatorTheta ot_mul(const OperatorTheta& a, const OperatorTheta& b);

// Q(theta + a).
IntPoly theta_shift_arg(const IntPoly& q, const BigInt& a);

// Scaled companion matrix M(theta) = l_theta * B(L_theta); requires the
// leading coefficient to be a nonzero integer constant.
CompanionMat companion(const OperatorTheta& l);

// The swap x -> -d, d -> x, renormalized to the sum f_j(x) d^j form; lets
// callers exchange the order and the coefficient degree before a run.
OperatorX transpose_xd(const OperatorX& l);

}  // namespace pcurv

#endif
