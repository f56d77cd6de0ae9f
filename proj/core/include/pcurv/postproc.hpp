#ifndef PCURV_POSTPROC_HPP
#define PCURV_POSTPROC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pcurv/intpoly.hpp"
#include "pcurv/truncmat.hpp"

namespace pcurv {

// Polynomial in Y with truncated coefficients, index = Y-degree.
using YPolyTrunc = std::vector<TruncPoly>;

// det(Y I - A) over F_p[t]/t^e, computed division-free (Samuelson-Berkowitz,
// O(s^4) ring products): the base ring has nilpotents, so anything needing
// unit pivots is out.  Monic of degree dim(A), low Y-degree first.
YPolyTrunc charpoly_trunc(const TruncPolyMat& a);

// Cancels the tree scaling: the factorial product is l_theta^p * B_p and
// l_theta^{p-1} = 1 mod p, so one division by l_theta recovers B_p.
TruncPolyMat recover_Bp(const TruncPolyMat& prod, const BigInt& l_theta,
                        std::uint64_t p);

// Multiplies every coefficient by l_theta mod p (the product of the p
// constant leading coefficients collapses to l_theta by Fermat).
YPolyTrunc xi_scale(YPolyTrunc chi, const BigInt& l_theta, std::uint64_t p);

// Bivariate polynomial over F_p: coeffs[i] is the x-polynomial attached to
// Y^i, residues canonical in [0, p), top coefficient nonzero.
struct BivarPoly {
  std::uint64_t p = 0;
  std::vector<IntPoly> coeffs;

  int degY() const { return static_cast<int>(coeffs.size()) - 1; }
  const IntPoly& coeff(std::size_t i) const;
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    return a.p == b.p && a.coeffs == b.coeffs;
  }
};

// Substitute x -> x + delta on every Y-coefficient (mod p).
BivarPoly bivar_shift_x(const BivarPoly& b, const BigInt& delta);

// Transport from theta-coordinates to (x, Y): the coefficient of t^j in the
// Y^i term contributes (-1)^j q x^j Y^{i+j}; afterwards the Y-exponents are
// shifted down by the Laurent depth k, which must be exact.  Requires p > d.
BivarPoly reverse_iso(const YPolyTrunc& q_theta, std::uint64_t p, unsigned k,
                      unsigned m);

// Same transport for p <= d: first solves the triangular system relating
// plain t-coordinates to (t^p - t)-coordinates, then transports.  For
// p > d it degenerates to reverse_iso.
BivarPoly reverse_iso_small(const YPolyTrunc& q_theta, std::uint64_t p,
                            unsigned d, unsigned k, unsigned m);

struct CharPolyRecord {
  std::uint64_t p = 0;
  unsigned m = 0;
  BivarPoly poly;       // P_p with P_p(x^p, Y) = charpoly of the p-curvature
  bool nilpotent = false;
  BigInt shift_applied = 0;

  friend bool operator==(const CharPolyRecord& a, const CharPolyRecord& b) {
    return a.p == b.p && a.m == b.m && a.poly == b.poly &&
           a.nilpotent == b.nilpotent && a.shift_applied == b.shift_applied;
  }
};

// Coefficient-wise exact division by l_x (the leading coefficient of the
// shifted operator), then the translation x -> x - a.  The result must come
// out monic of Y-degree m; nilpotent iff it equals Y^m.
CharPolyRecord finalize(const BivarPoly& r, const IntPoly& l_x, const BigInt& a,
                        unsigned m);

// One JSON object per line; residues as decimal strings.
std::string record_to_jsonl(const CharPolyRecord& rec);
std::string record_to_jsonl_compact(const CharPolyRecord& rec);
std::string exclusion_to_jsonl(std::uint64_t p, const std::string& reason);

// F_p[x] helpers on canonical-residue IntPolys.
std::pair<IntPoly, IntPoly> fp_divrem(const IntPoly& a, const IntPoly& b,
                                      const BigInt& p);

}  // namespace pcurv

#endif
