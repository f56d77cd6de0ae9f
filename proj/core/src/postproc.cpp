#include "pcurv/postproc.hpp"

#include <algorithm>
#include <sstream>

#include "pcurv/errors.hpp"
#include "pcurv/ore.hpp"

namespace pcurv {

namespace {
const IntPoly kZeroPoly;

BigInt binom_mod(unsigned long n, unsigned long k, const BigInt& p) {
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return mod_floor(b, p);
}
}  // namespace

YPolyTrunc charpoly_trunc(const TruncPolyMat& a) {
  const unsigned n = a.dim();
  const unsigned e = a.trunc_order();
  const OptModulus& mod = a.modulus();
  const TruncPoly zero = TruncPoly::zero(e, mod);

  // c holds the characteristic polynomial of the leading principal r x r
  // submatrix, highest Y-degree first; grown one row/column at a time
  // through the Toeplitz recurrence.
  std::vector<TruncPoly> c{TruncPoly::one(e, mod)};
  for (unsigned r = 1; r <= n; ++r) {
    // moments: t_0 = corner, t_k = row . principal^{k-1} . column
    std::vector<TruncPoly> t;
    t.reserve(r);
    t.push_back(a.at(r - 1, r - 1));
    if (r >= 2) {
      std::vector<TruncPoly> vec;
      vec.reserve(r - 1);
      for (unsigned i = 0; i + 1 < r; ++i) vec.push_back(a.at(i, r - 1));
      for (unsigned k = 1; k + 1 <= r; ++k) {
        TruncPoly dot = zero;
        for (unsigned i = 0; i + 1 < r; ++i) {
          if (!a.at(r - 1, i).is_zero() && !vec[i].is_zero()) {
            dot += poly_mul_trunc(a.at(r - 1, i), vec[i]);
          }
        }
        t.push_back(std::move(dot));
        if (k + 2 <= r) {
          std::vector<TruncPoly> nxt(r - 1, zero);
          for (unsigned i = 0; i + 1 < r; ++i) {
            for (unsigned j = 0; j + 1 < r; ++j) {
              if (!a.at(i, j).is_zero() && !vec[j].is_zero()) {
                nxt[i] += poly_mul_trunc(a.at(i, j), vec[j]);
              }
            }
          }
          vec = std::move(nxt);
        }
      }
    }
    // column vector (1, -t_0, ..., -t_{r-1}) applied as a lower Toeplitz map
    std::vector<TruncPoly> next(r + 1, zero);
    for (unsigned i = 0; i <= r; ++i) {
      for (unsigned j = (i >= r ? i - r : 0); j < std::min<unsigned>(i + 1, r); ++j) {
        const unsigned u = i - j;
        if (u == 0) {
          next[i] += c[j];
        } else if (!t[u - 1].is_zero() && !c[j].is_zero()) {
          next[i] -= poly_mul_trunc(t[u - 1], c[j]);
        }
      }
    }
    c = std::move(next);
  }

  YPolyTrunc out(n + 1, zero);
  for (unsigned i = 0; i <= n; ++i) out[i] = std::move(c[n - i]);
  return out;
}

TruncPolyMat recover_Bp(const TruncPolyMat& prod, const BigInt& l_theta,
                        std::uint64_t p) {
  if (!prod.modulus()) throw StructuralError("recover_Bp: product has no modulus");
  const Modulus mod = *prod.modulus();
  if (mod.value() != static_cast<unsigned long>(p)) {
    throw StructuralError("recover_Bp: modulus is not p");
  }
  const BigInt inv = scalar_inv_mod(mod_floor(l_theta, mod.value()), mod);
  return prod.scaled(inv);
}

YPolyTrunc xi_scale(YPolyTrunc chi, const BigInt& l_theta, std::uint64_t p) {
  const BigInt l = mod_floor(l_theta, BigInt(static_cast<unsigned long>(p)));
  for (auto& coeff : chi) coeff = coeff.scaled(l);
  return chi;
}

const IntPoly& BivarPoly::coeff(std::size_t i) const {
  return i < coeffs.size() ? coeffs[i] : kZeroPoly;
}

BivarPoly bivar_shift_x(const BivarPoly& b, const BigInt& delta) {
  const BigInt p(static_cast<unsigned long>(b.p));
  const BigInt d = mod_floor(delta, p);
  BivarPoly out;
  out.p = b.p;
  out.coeffs.reserve(b.coeffs.size());
  for (const auto& c : b.coeffs) {
    out.coeffs.push_back(theta_shift_arg(c, d).reduced_mod(p));
  }
  while (!out.coeffs.empty() && out.coeffs.back().is_zero()) out.coeffs.pop_back();
  return out;
}

namespace {

// Shared transport step: coords[i][j] is the coefficient of (t^p - t)^j in
// the Y^i term; emits sum coords[i][j] x^j Y^{i+j}, then divides by Y^k.
BivarPoly transport(const std::vector<std::vector<BigInt>>& coords,
                    std::uint64_t p, unsigned k, unsigned m) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    top = std::max(top, i + coords[i].size());
  }
  std::vector<IntPoly> buf(top);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = 0; j < coords[i].size(); ++j) {
      if (sgn(coords[i][j]) == 0) continue;
      buf[i + j] += IntPoly::monomial(coords[i][j], j);
    }
  }
  for (unsigned i = 0; i < k && i < buf.size(); ++i) {
    if (!buf[i].is_zero()) {
      throw NonzeroLowYCoefficients("Y^" + std::to_string(i) +
                                    " survives the Y^" + std::to_string(k) +
                                    " division at p=" + std::to_string(p));
    }
  }
  BivarPoly out;
  out.p = p;
  if (buf.size() > k) {
    out.coeffs.assign(std::make_move_iterator(buf.begin() + k),
                      std::make_move_iterator(buf.end()));
  }
  while (!out.coeffs.empty() && out.coeffs.back().is_zero()) out.coeffs.pop_back();
  out.coeffs.reserve(std::max<std::size_t>(out.coeffs.size(), m + 1));
  return out;
}

}  // namespace

BivarPoly reverse_iso(const YPolyTrunc& q_theta, std::uint64_t p, unsigned k,
                      unsigned m) {
  if (q_theta.empty()) throw ContractError("reverse_iso: empty input");
  const unsigned d = q_theta.front().trunc_order() - 1;
  if (p <= d) throw ContractError("reverse_iso requires p > d");
  const BigInt pb(static_cast<unsigned long>(p));

  std::vector<std::vector<BigInt>> coords(q_theta.size());
  for (std::size_t i = 0; i < q_theta.size(); ++i) {
    coords[i].resize(d + 1);
    for (unsigned j = 0; j <= d; ++j) {
      const BigInt& q = q_theta[i].coeff(j);
      // (t^p - t)-coordinate = (-1)^j * t-coordinate
      coords[i][j] = (j % 2 == 1 && sgn(q) != 0) ? BigInt(pb - q) : q;
    }
  }
  return transport(coords, p, k, m);
}

BivarPoly reverse_iso_small(const YPolyTrunc& q_theta, std::uint64_t p,
                            unsigned d, unsigned k, unsigned m) {
  if (q_theta.empty()) throw ContractError("reverse_iso_small: empty input");
  if (p < 2) throw ContractError("reverse_iso_small: p must be prime");
  const BigInt pb(static_cast<unsigned long>(p));

  // q'_i = sum_t (-1)^{i-tp} C(i-t(p-1), t) q_{i-t(p-1)}; the t = 0 term is
  // (-1)^i q_i, so the system is triangular with invertible diagonal.
  std::vector<std::vector<BigInt>> coords(q_theta.size());
  for (std::size_t row = 0; row < q_theta.size(); ++row) {
    auto& q = coords[row];
    q.resize(d + 1);
    for (unsigned i = 0; i <= d; ++i) {
      BigInt rhs = q_theta[row].coeff(i);
      for (unsigned t = 1; t * (p - 1) <= i; ++t) {
        const unsigned n = i - t * static_cast<unsigned>(p - 1);
        if (n < t) break;
        BigInt term = binom_mod(n, t, pb) * q[n];
        if ((i - t * p) % 2 == 1) term = -term;
        rhs -= term;
      }
      if (i % 2 == 1) rhs = -rhs;
      q[i] = mod_floor(rhs, pb);
    }
  }
  return transport(coords, p, k, m);
}

std::pair<IntPoly, IntPoly> fp_divrem(const IntPoly& a, const IntPoly& b,
                                      const BigInt& p) {
  if (b.is_zero()) throw ContractError("fp_divrem: division by zero");
  const Modulus mod(p);
  IntPoly rem = a.reduced_mod(p);
  const int db = b.degree();
  const BigInt lead_inv = scalar_inv_mod(b.leading(), mod);
  std::vector<BigInt> q;
  if (rem.degree() >= db) q.resize(rem.degree() - db + 1);
  while (rem.degree() >= db) {
    const int dr = rem.degree();
    const BigInt f = mod_floor(rem.leading() * lead_inv, p);
    q[dr - db] = f;
    rem = (rem - (b * IntPoly::monomial(f, dr - db))).reduced_mod(p);
  }
  return {IntPoly(std::move(q)), rem};
}

CharPolyRecord finalize(const BivarPoly& r, const IntPoly& l_x, const BigInt& a,
                        unsigned m) {
  const BigInt p(static_cast<unsigned long>(r.p));
  const IntPoly lred = l_x.reduced_mod(p);
  if (lred.is_zero()) {
    throw ContractError("finalize: l_x vanishes mod p");
  }

  BivarPoly quo;
  quo.p = r.p;
  quo.coeffs.reserve(r.coeffs.size());
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    auto [q, rem] = fp_divrem(r.coeffs[i], lred, p);
    if (!rem.is_zero()) {
      throw ExactDivisionFailed("coefficient of Y^" + std::to_string(i) +
                                " is not divisible by l_x at p=" +
                                std::to_string(r.p));
    }
    quo.coeffs.push_back(std::move(q));
  }
  while (!quo.coeffs.empty() && quo.coeffs.back().is_zero()) quo.coeffs.pop_back();
  if (quo.degY() != static_cast<int>(m) ||
      !(quo.coeffs.back() == IntPoly::constant(1))) {
    throw ExactDivisionFailed("quotient is not monic of Y-degree " +
                              std::to_string(m) + " at p=" + std::to_string(r.p));
  }

  CharPolyRecord rec;
  rec.p = r.p;
  rec.m = m;
  rec.poly = (sgn(a) != 0) ? bivar_shift_x(quo, -a) : std::move(quo);
  rec.shift_applied = a;
  rec.nilpotent = true;
  for (unsigned i = 0; i < m; ++i) {
    if (!rec.poly.coeff(i).is_zero()) {
      rec.nilpotent = false;
      break;
    }
  }
  return rec;
}

namespace {
void append_intpoly_json(std::ostringstream& os, const IntPoly& q) {
  os << "[";
  for (std::size_t i = 0; i < q.coeffs().size(); ++i) {
    if (i) os << ",";
    os << "\"" << q.coeffs()[i].get_str() << "\"";
  }
  os << "]";
}
}  // namespace

std::string record_to_jsonl(const CharPolyRecord& rec) {
  std::ostringstream os;
  os << "{\"p\":" << rec.p << ",\"m\":" << rec.m << ",\"coeffs\":[";
  for (unsigned i = 0; i <= rec.m; ++i) {
    if (i) os << ",";
    append_intpoly_json(os, rec.poly.coeff(i));
  }
  os << "],\"nilpotent\":" << (rec.nilpotent ? "true" : "false")
     << ",\"shift\":\"" << rec.shift_applied.get_str() << "\"}";
  return os.str();
}

std::string record_to_jsonl_compact(const CharPolyRecord& rec) {
  std::ostringstream os;
  os << "{\"p\":" << rec.p
     << ",\"nilpotent\":" << (rec.nilpotent ? "true" : "false") << "}";
  return os.str();
}

std::string exclusion_to_jsonl(std::uint64_t p, const std::string& reason) {
  std::ostringstream os;
  os << "{\"p\":" << p << ",\"excluded\":\"" << reason << "\"}";
  return os.str();
}

}  // namespace pcurv
