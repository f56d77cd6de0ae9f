#include "pcurv/oracle.hpp"

#include <algorithm>
#include <functional>

#include "pcurv/errors.hpp"

namespace pcurv::oracle {

namespace {

Word addm(Word a, Word b, Word p) {
  Word r = a + b;
  return r >= p ? r - p : r;
}
Word subm(Word a, Word b, Word p) { return a >= b ? a - b : a + p - b; }
Word mulm(Word a, Word b, Word p) {
  return static_cast<Word>((static_cast<unsigned __int128>(a) * b) % p);
}
Word powm(Word a, Word e, Word p) {
  Word r = 1 % p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}
Word invm(Word a, Word p) {
  if (a % p == 0) throw NotInvertible("oracle: zero is not invertible");
  return powm(a % p, p - 2, p);
}

FpPoly fp_one() { return FpPoly{{1}}; }

FpPoly fp_monic(const FpPoly& a, Word p) {
  if (a.is_zero()) return a;
  return fp_scal(a, invm(a.c.back(), p), p);
}

}  // namespace

void FpPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

FpPoly FpPoly::from_intpoly(const IntPoly& q, Word p) {
  FpPoly r;
  r.c.reserve(q.coeffs().size());
  const BigInt pb(static_cast<unsigned long>(p));
  for (const auto& v : q.coeffs()) r.c.push_back(to_u64(mod_floor(v, pb)));
  r.trim();
  return r;
}

IntPoly FpPoly::to_intpoly() const {
  std::vector<BigInt> v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = static_cast<unsigned long>(c[i]);
  return IntPoly(std::move(v));
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, Word p) {
  FpPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = addm(r.c[i], b.c[i], p);
  r.trim();
  return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, Word p) {
  FpPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = subm(r.c[i], b.c[i], p);
  r.trim();
  return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, Word p) {
  if (a.is_zero() || b.is_zero()) return FpPoly{};
  FpPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      r.c[i + j] = addm(r.c[i + j], mulm(a.c[i], b.c[j], p), p);
    }
  }
  r.trim();
  return r;
}

FpPoly fp_scal(const FpPoly& a, Word s, Word p) {
  s %= p;
  if (s == 0) return FpPoly{};
  FpPoly r = a;
  for (auto& v : r.c) v = mulm(v, s, p);
  r.trim();
  return r;
}

FpPoly fp_pow(const FpPoly& a, std::uint64_t n, Word p) {
  FpPoly r = fp_one();
  FpPoly base = a;
  while (n) {
    if (n & 1) r = fp_mul(r, base, p);
    base = fp_mul(base, base, p);
    n >>= 1;
  }
  return r;
}

FpPoly fp_derivative(const FpPoly& a, Word p) {
  if (a.c.size() <= 1) return FpPoly{};
  FpPoly r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    r.c[i - 1] = mulm(a.c[i], i % p, p);
  }
  r.trim();
  return r;
}

FpPoly fp_shift_arg(const FpPoly& a, Word delta, Word p) {
  delta %= p;
  if (delta == 0 || a.is_zero()) return a;
  std::vector<Word> acc;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    acc.push_back(0);
    for (std::size_t t = acc.size() - 1; t-- > 0;) {
      acc[t + 1] = addm(acc[t + 1], acc[t], p);
      acc[t] = mulm(acc[t], delta, p);
    }
    acc[0] = addm(acc[0], a.c[i], p);
  }
  FpPoly r{std::move(acc)};
  r.trim();
  return r;
}

std::pair<FpPoly, FpPoly> fp_poly_divrem(const FpPoly& a, const FpPoly& b, Word p) {
  if (b.is_zero()) throw ContractError("oracle: polynomial division by zero");
  FpPoly rem = a;
  const int db = b.degree();
  const Word linv = invm(b.c.back(), p);
  FpPoly q;
  if (rem.degree() >= db) q.c.assign(rem.degree() - db + 1, 0);
  while (rem.degree() >= db) {
    const int dr = rem.degree();
    const Word f = mulm(rem.c.back(), linv, p);
    q.c[dr - db] = f;
    for (int i = 0; i <= db; ++i) {
      rem.c[dr - db + i] = subm(rem.c[dr - db + i], mulm(f, b.c[i], p), p);
    }
    rem.trim();
  }
  q.trim();
  return {q, rem};
}

FpPoly fp_gcd(FpPoly a, FpPoly b, Word p) {
  while (!b.is_zero()) {
    FpPoly r = fp_poly_divrem(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

Frac frac(FpPoly num, FpPoly den, Word p) {
  if (den.is_zero()) throw ContractError("oracle: zero denominator");
  if (num.is_zero()) return Frac{FpPoly{}, fp_one()};
  FpPoly g = fp_gcd(num, den, p);
  if (g.degree() > 0) {
    num = fp_poly_divrem(num, g, p).first;
    den = fp_poly_divrem(den, g, p).first;
  }
  const Word linv = invm(den.c.back(), p);
  return Frac{fp_scal(num, linv, p), fp_scal(den, linv, p)};
}

Frac frac_add(const Frac& a, const Frac& b, Word p) {
  return frac(fp_add(fp_mul(a.num, b.den, p), fp_mul(b.num, a.den, p), p),
              fp_mul(a.den, b.den, p), p);
}

Frac frac_sub(const Frac& a, const Frac& b, Word p) {
  return frac(fp_sub(fp_mul(a.num, b.den, p), fp_mul(b.num, a.den, p), p),
              fp_mul(a.den, b.den, p), p);
}

Frac frac_mul(const Frac& a, const Frac& b, Word p) {
  return frac(fp_mul(a.num, b.num, p), fp_mul(a.den, b.den, p), p);
}

Frac frac_derivative(const Frac& a, Word p) {
  // (n/d)' = (n'd - nd') / d^2
  return frac(fp_sub(fp_mul(fp_derivative(a.num, p), a.den, p),
                     fp_mul(a.num, fp_derivative(a.den, p), p), p),
              fp_mul(a.den, a.den, p), p);
}

namespace {

Frac frac_zero() { return Frac{FpPoly{}, fp_one()}; }
Frac frac_of(FpPoly n) { return Frac{std::move(n), fp_one()}; }

RatFunMat companion_fracs(const OperatorX& l, Word p) {
  const int m = l.order();
  if (m < 1) throw ContractError("oracle: operator order must be >= 1");
  FpPoly lead = FpPoly::from_intpoly(l.leading(), p);
  if (lead.is_zero()) throw NotReducible("leading coefficient vanishes mod p");

  RatFunMat b;
  b.p = p;
  b.n = static_cast<unsigned>(m);
  b.a.assign(static_cast<std::size_t>(m) * m, frac_zero());
  for (unsigned i = 0; i + 1 < b.n; ++i) b.at(i + 1, i) = frac_of(fp_one());
  for (unsigned i = 0; i < b.n; ++i) {
    FpPoly fi = FpPoly::from_intpoly(l.coeff(i), p);
    b.at(i, b.n - 1) = frac(fp_scal(fi, p - 1, p), lead, p);
  }
  return b;
}

RatFunMat mat_mul_fracs(const RatFunMat& a, const RatFunMat& b) {
  RatFunMat r;
  r.p = a.p;
  r.n = a.n;
  r.a.assign(static_cast<std::size_t>(a.n) * a.n, frac_zero());
  for (unsigned i = 0; i < a.n; ++i) {
    for (unsigned j = 0; j < a.n; ++j) {
      Frac acc = frac_zero();
      for (unsigned k = 0; k < a.n; ++k) {
        if (a.at(i, k).num.is_zero() || b.at(k, j).num.is_zero()) continue;
        acc = frac_add(acc, frac_mul(a.at(i, k), b.at(k, j), a.p), a.p);
      }
      r.at(i, j) = std::move(acc);
    }
  }
  return r;
}

}  // namespace

RatFunMat katz_p_curvature(const OperatorX& l, Word p) {
  RatFunMat b = companion_fracs(l, p);
  RatFunMat a = b;
  for (Word it = 1; it < p; ++it) {
    RatFunMat next = mat_mul_fracs(b, a);
    for (unsigned i = 0; i < a.n; ++i) {
      for (unsigned j = 0; j < a.n; ++j) {
        next.at(i, j) = frac_add(frac_derivative(a.at(i, j), p), next.at(i, j), p);
      }
    }
    a = std::move(next);
  }
  return a;
}

namespace {

// Y-polynomials with fraction coefficients, low degree first.
using YFrac = std::vector<Frac>;

YFrac yf_add(const YFrac& a, const YFrac& b, Word p) {
  YFrac r = a;
  if (r.size() < b.size()) r.resize(b.size(), frac_zero());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = frac_add(r[i], b[i], p);
  while (!r.empty() && r.back().num.is_zero()) r.pop_back();
  return r;
}

YFrac yf_mul(const YFrac& a, const YFrac& b, Word p) {
  if (a.empty() || b.empty()) return {};
  YFrac r(a.size() + b.size() - 1, frac_zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].num.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].num.is_zero()) continue;
      r[i + j] = frac_add(r[i + j], frac_mul(a[i], b[j], p), p);
    }
  }
  while (!r.empty() && r.back().num.is_zero()) r.pop_back();
  return r;
}

YFrac yf_neg(const YFrac& a, Word p) {
  YFrac r = a;
  for (auto& f : r) f.num = fp_scal(f.num, p - 1, p);
  return r;
}

YFrac det_yfrac(const std::vector<YFrac>& mat, unsigned n, Word p) {
  if (n == 1) return mat[0];
  YFrac acc;
  for (unsigned j = 0; j < n; ++j) {
    if (mat[j].empty()) continue;
    std::vector<YFrac> minor;
    minor.reserve(static_cast<std::size_t>(n - 1) * (n - 1));
    for (unsigned i = 1; i < n; ++i) {
      for (unsigned jj = 0; jj < n; ++jj) {
        if (jj != j) minor.push_back(mat[i * n + jj]);
      }
    }
    YFrac term = yf_mul(mat[j], det_yfrac(minor, n - 1, p), p);
    if (j % 2 == 1) term = yf_neg(term, p);
    acc = yf_add(acc, term, p);
  }
  return acc;
}

}  // namespace

std::vector<Frac> charpoly_fracs(const RatFunMat& m) {
  const Word p = m.p;
  std::vector<YFrac> ym(static_cast<std::size_t>(m.n) * m.n);
  for (unsigned i = 0; i < m.n; ++i) {
    for (unsigned j = 0; j < m.n; ++j) {
      YFrac v;
      Frac neg = m.at(i, j);
      neg.num = fp_scal(neg.num, p - 1, p);
      if (!neg.num.is_zero() || i == j) v.push_back(neg);
      if (i == j) v.push_back(frac_of(fp_one()));
      ym[i * m.n + j] = std::move(v);
    }
  }
  YFrac chi = det_yfrac(ym, m.n, p);
  chi.resize(m.n + 1, frac_zero());
  return chi;
}

ThetaOracle theta_product_oracle(const OperatorTheta& lt, Word p) {
  const IntPoly& top = lt.leading();
  if (top.degree() != 0) {
    throw NormalizationRequired("oracle: theta leading coefficient not constant");
  }
  const Word l = to_u64(mod_floor(top.coeff(0), BigInt(static_cast<unsigned long>(p))));
  if (l == 0) throw NotReducible("oracle: p divides l_theta");
  const Word linv = invm(l, p);
  const unsigned s = lt.s();

  // companion matrix of the monic normalization, entries in F_p[t]
  std::vector<FpPoly> base(static_cast<std::size_t>(s) * s);
  for (unsigned i = 0; i + 1 < s; ++i) base[(i + 1) * s + i] = fp_one();
  for (unsigned i = 0; i < s; ++i) {
    FpPoly ci = FpPoly::from_intpoly(lt.coeff_shifted(i), p);
    base[i * s + (s - 1)] = fp_scal(ci, mulm(p - 1, linv, p), p);
  }

  auto shifted = [&](Word k) {
    std::vector<FpPoly> b = base;
    for (auto& q : b) q = fp_shift_arg(q, k, p);
    return b;
  };
  auto mul = [&](const std::vector<FpPoly>& a, const std::vector<FpPoly>& b) {
    std::vector<FpPoly> r(static_cast<std::size_t>(s) * s);
    for (unsigned i = 0; i < s; ++i) {
      for (unsigned j = 0; j < s; ++j) {
        FpPoly acc;
        for (unsigned k = 0; k < s; ++k) {
          if (a[i * s + k].is_zero() || b[k * s + j].is_zero()) continue;
          acc = fp_add(acc, fp_mul(a[i * s + k], b[k * s + j], p), p);
        }
        r[i * s + j] = std::move(acc);
      }
    }
    return r;
  };

  std::vector<FpPoly> prod = base;
  for (Word k = 1; k < p; ++k) prod = mul(prod, shifted(k));

  // char poly by cofactor expansion over F_p[t][Y]
  using YP = std::vector<FpPoly>;
  std::vector<YP> ym(static_cast<std::size_t>(s) * s);
  for (unsigned i = 0; i < s; ++i) {
    for (unsigned j = 0; j < s; ++j) {
      YP v;
      FpPoly neg = fp_scal(prod[i * s + j], p - 1, p);
      if (!neg.is_zero() || i == j) v.push_back(std::move(neg));
      if (i == j) v.push_back(fp_one());
      ym[i * s + j] = std::move(v);
    }
  }
  std::function<YP(const std::vector<YP>&, unsigned)> det =
      [&](const std::vector<YP>& mat, unsigned n) -> YP {
    if (n == 1) return mat[0];
    YP acc;
    for (unsigned j = 0; j < n; ++j) {
      if (mat[j].empty()) continue;
      std::vector<YP> minor;
      for (unsigned i = 1; i < n; ++i) {
        for (unsigned jj = 0; jj < n; ++jj) {
          if (jj != j) minor.push_back(mat[i * n + jj]);
        }
      }
      YP sub = det(minor, n - 1);
      YP term(mat[j].size() + (sub.empty() ? 0 : sub.size()) , FpPoly{});
      if (!sub.empty()) {
        term.assign(mat[j].size() + sub.size() - 1, FpPoly{});
        for (std::size_t u = 0; u < mat[j].size(); ++u) {
          for (std::size_t v = 0; v < sub.size(); ++v) {
            term[u + v] = fp_add(term[u + v], fp_mul(mat[j][u], sub[v], p), p);
          }
        }
      } else {
        term.clear();
      }
      if (j % 2 == 1) {
        for (auto& q : term) q = fp_scal(q, p - 1, p);
      }
      if (acc.size() < term.size()) acc.resize(term.size());
      for (std::size_t u = 0; u < term.size(); ++u) acc[u] = fp_add(acc[u], term[u], p);
      while (!acc.empty() && acc.back().is_zero()) acc.pop_back();
    }
    return acc;
  };

  ThetaOracle out;
  out.s = s;
  out.l_theta = l;
  out.chi = det(ym, s);
  out.chi.resize(s + 1, FpPoly{});

  // membership in F_p[t^p - t]: peel from the top degree down
  FpPoly u;  // t^p - t
  u.c.assign(p + 1, 0);
  u.c[1] = p - 1;
  u.c[p] = 1;
  out.in_frobenius_subring = true;
  out.coords.resize(out.chi.size());
  for (std::size_t i = 0; i < out.chi.size(); ++i) {
    FpPoly c = out.chi[i];
    std::vector<Word>& q = out.coords[i];
    bool ok = true;
    while (!c.is_zero()) {
      const int deg = c.degree();
      if (deg == 0) {
        if (q.empty()) q.resize(1, 0);
        q[0] = c.c[0];
        break;
      }
      if (deg % static_cast<int>(p) != 0) {
        ok = false;
        break;
      }
      const std::size_t j = static_cast<std::size_t>(deg) / p;
      if (q.size() < j + 1) q.resize(j + 1, 0);
      q[j] = c.c.back();
      c = fp_sub(c, fp_scal(fp_pow(u, j, p), q[j], p), p);
    }
    if (!ok) {
      out.in_frobenius_subring = false;
      q.clear();
    }
  }
  return out;
}

std::vector<Frac> xi_x(const OperatorX& l, Word p) {
  RatFunMat a = katz_p_curvature(l, p);
  std::vector<Frac> chi = charpoly_fracs(a);
  FpPoly lead = FpPoly::from_intpoly(l.leading(), p);
  Frac scale = frac_of(fp_pow(lead, p, p));
  for (auto& f : chi) f = frac_mul(f, scale, p);
  return chi;
}

bool xi_multiplicativity_check(const OperatorX& l1, const OperatorX& l2, Word p) {
  std::vector<Frac> a = xi_x(l1, p);
  std::vector<Frac> b = xi_x(l2, p);
  std::vector<Frac> ab = xi_x(op_mul(l1, l2), p);
  YFrac prod = yf_mul(a, b, p);
  prod.resize(ab.size(), frac_zero());
  YFrac want = ab;
  if (prod.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (!(prod[i] == want[i])) return false;
  }
  return true;
}

CharPolyRecord katz_record(const OperatorX& l, Word p, const BigInt& shift_reported) {
  const unsigned m = static_cast<unsigned>(l.order());
  RatFunMat a = katz_p_curvature(l, p);
  std::vector<Frac> chi = charpoly_fracs(a);

  BivarPoly poly;
  poly.p = p;
  poly.coeffs.reserve(m + 1);
  for (unsigned i = 0; i <= m; ++i) {
    const Frac& f = chi[i];
    if (f.den.degree() != 0) {
      throw ExactDivisionFailed("oracle: charpoly coefficient of Y^" +
                                std::to_string(i) + " is not polynomial at p=" +
                                std::to_string(p));
    }
    // den is monic constant 1 in canonical form
    std::vector<BigInt> compressed;
    for (std::size_t deg = 0; deg < f.num.c.size(); ++deg) {
      if (f.num.c[deg] == 0) continue;
      if (deg % p != 0) {
        throw ExactDivisionFailed("oracle: charpoly exponent " + std::to_string(deg) +
                                  " is not a multiple of p=" + std::to_string(p));
      }
      const std::size_t e = deg / p;
      if (compressed.size() < e + 1) compressed.resize(e + 1, BigInt(0));
      compressed[e] = static_cast<unsigned long>(f.num.c[deg]);
    }
    poly.coeffs.push_back(IntPoly(std::move(compressed)));
  }
  while (!poly.coeffs.empty() && poly.coeffs.back().is_zero()) poly.coeffs.pop_back();

  CharPolyRecord rec;
  rec.p = p;
  rec.m = m;
  rec.poly = std::move(poly);
  rec.shift_applied = shift_reported;
  rec.nilpotent = true;
  for (unsigned i = 0; i < m; ++i) {
    if (!rec.poly.coeff(i).is_zero()) {
      rec.nilpotent = false;
      break;
    }
  }
  return rec;
}

CharPolyRecord theta_record(const OperatorTheta& lt, unsigned m,
                            const IntPoly& l_x_shifted, const BigInt& a, Word p) {
  ThetaOracle to = theta_product_oracle(lt, p);
  if (!to.in_frobenius_subring) {
    throw Error("oracle: charpoly not in F_p[t^p - t] at p=" + std::to_string(p));
  }
  const unsigned k = lt.laurent_depth();

  // Xi = l_theta^p chi = l_theta chi; transport q_{i,j} -> x^j Y^{i+j}
  std::size_t top = 0;
  for (std::size_t i = 0; i < to.coords.size(); ++i) {
    top = std::max(top, i + to.coords[i].size());
  }
  std::vector<FpPoly> buf(top);
  for (std::size_t i = 0; i < to.coords.size(); ++i) {
    for (std::size_t j = 0; j < to.coords[i].size(); ++j) {
      const Word q = mulm(to.coords[i][j], to.l_theta, p);
      if (q == 0) continue;
      auto& cell = buf[i + j];
      if (cell.c.size() < j + 1) cell.c.resize(j + 1, 0);
      cell.c[j] = addm(cell.c[j], q, p);
    }
  }
  for (unsigned i = 0; i < k && i < buf.size(); ++i) {
    if (!buf[i].is_zero()) {
      throw NonzeroLowYCoefficients("oracle: Y^" + std::to_string(i) +
                                    " survives at p=" + std::to_string(p));
    }
  }

  const FpPoly lx = FpPoly::from_intpoly(l_x_shifted, p);
  const Word ashift = to_u64(mod_floor(-a, BigInt(static_cast<unsigned long>(p))));

  BivarPoly poly;
  poly.p = p;
  for (std::size_t i = k; i < buf.size(); ++i) {
    auto [q, rem] = fp_poly_divrem(buf[i], lx, p);
    if (!rem.is_zero()) {
      throw ExactDivisionFailed("oracle: theta route division inexact at p=" +
                                std::to_string(p));
    }
    poly.coeffs.push_back(fp_shift_arg(q, ashift, p).to_intpoly());
  }
  while (!poly.coeffs.empty() && poly.coeffs.back().is_zero()) poly.coeffs.pop_back();

  CharPolyRecord rec;
  rec.p = p;
  rec.m = m;
  rec.poly = std::move(poly);
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

}  // namespace pcurv::oracle
