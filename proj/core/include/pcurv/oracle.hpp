#ifndef PCURV_ORACLE_HPP
#define PCURV_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "pcurv/ore.hpp"
#include "pcurv/postproc.hpp"

namespace pcurv::oracle {

// Slow, independent ground truth.  Single-prime p-curvatures come from
// iterating the derivation recursion over F_p(x); theta-side products are
// taken naively over the full (untruncated) F_p[t].  Nothing here shares
// arithmetic with the pipeline beyond big integers and the record structs,
// so agreement between the two routes is meaningful.

using Word = std::uint64_t;

// Dense polynomial over F_p with word-size p; index = degree, trimmed.
struct FpPoly {
  std::vector<Word> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Word coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
  void trim();

  static FpPoly from_intpoly(const IntPoly& q, Word p);
  IntPoly to_intpoly() const;

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.c == b.c; }
};

FpPoly fp_add(const FpPoly& a, const FpPoly& b, Word p);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, Word p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, Word p);
FpPoly fp_scal(const FpPoly& a, Word s, Word p);
FpPoly fp_pow(const FpPoly& a, std::uint64_t n, Word p);
FpPoly fp_derivative(const FpPoly& a, Word p);
FpPoly fp_shift_arg(const FpPoly& a, Word delta, Word p);  // a(t + delta)
std::pair<FpPoly, FpPoly> fp_poly_divrem(const FpPoly& a, const FpPoly& b, Word p);
FpPoly fp_gcd(FpPoly a, FpPoly b, Word p);  // monic

// Reduced fraction with monic denominator (canonical form).
struct Frac {
  FpPoly num;
  FpPoly den;  // monic, nonzero

  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
};

Frac frac(FpPoly num, FpPoly den, Word p);
Frac frac_add(const Frac& a, const Frac& b, Word p);
Frac frac_sub(const Frac& a, const Frac& b, Word p);
Frac frac_mul(const Frac& a, const Frac& b, Word p);
Frac frac_derivative(const Frac& a, Word p);

// Square matrix of reduced fractions over F_p(x).
struct RatFunMat {
  Word p = 0;
  unsigned n = 0;
  std::vector<Frac> a;

  const Frac& at(unsigned i, unsigned j) const { return a[i * n + j]; }
  Frac& at(unsigned i, unsigned j) { return a[i * n + j]; }
};

// Matrix of left multiplication by d^p on the quotient by L, computed with
// A_1 = B and A_{i+1} = A_i' + B A_i, B the companion matrix of L mod p.
// (The recursion with both signs flipped gives the same matrix times
// (-1)^p; this orientation is the one the Xi identities use.)
RatFunMat katz_p_curvature(const OperatorX& l, Word p);

// det(Y I - A) by cofactor expansion over F_p(x)[Y]; monic, low degree first.
std::vector<Frac> charpoly_fracs(const RatFunMat& m);

struct ThetaOracle {
  unsigned s = 0;
  Word l_theta = 0;
  std::vector<FpPoly> chi;  // char poly of the full product, low Y-degree first
  bool in_frobenius_subring = false;   // all coefficients lie in F_p[t^p - t]
  std::vector<std::vector<Word>> coords;  // (t^p - t)-adic coordinates per Y-coeff
};

// Naive ascending product B(t) B(t+1) ... B(t+p-1) over full F_p[t], its
// characteristic polynomial, and the subring membership verification.
ThetaOracle theta_product_oracle(const OperatorTheta& lt, Word p);

// Xi(L) = l_x^p chi(A_p(L))(Y) as a Y-polynomial with fraction coefficients.
std::vector<Frac> xi_x(const OperatorX& l, Word p);

// Checks Xi(L1 L2) = Xi(L1) Xi(L2).
bool xi_multiplicativity_check(const OperatorX& l1, const OperatorX& l2, Word p);

// P_p record via the x-side route: the charpoly coefficients must come out
// polynomial with exponents that are multiples of p.
CharPolyRecord katz_record(const OperatorX& l, Word p, const BigInt& shift_reported);

// P_p record via the theta-side route with exact untruncated coordinates;
// lt must be the image of the shifted operator, a the shift to undo.
CharPolyRecord theta_record(const OperatorTheta& lt, unsigned m,
                            const IntPoly& l_x_shifted, const BigInt& a, Word p);

}  // namespace pcurv::oracle

#endif
