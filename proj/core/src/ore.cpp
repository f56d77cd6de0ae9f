#include "pcurv/ore.hpp"

#include <algorithm>

#include "pcurv/errors.hpp"

namespace pcurv {

namespace {
const IntPoly kZeroPoly;

BigInt binom(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}
}  // namespace

const IntPoly& OperatorX::coeff(std::size_t j) const {
  return j < coeffs_.size() ? coeffs_[j] : kZeroPoly;
}

const IntPoly& OperatorX::leading() const {
  return coeffs_.empty() ? kZeroPoly : coeffs_.back();
}

unsigned OperatorX::max_x_degree() const {
  int d = 0;
  for (const auto& c : coeffs_) d = std::max(d, c.degree());
  return static_cast<unsigned>(std::max(d, 0));
}

OperatorTheta::OperatorTheta(unsigned k, std::vector<IntPoly> coeffs)
    : k_(k), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.empty()) throw ContractError("zero theta-operator");
  if (k_ > 0 && coeffs_[0].is_zero()) {
    throw ContractError("laurent depth k is not minimal");
  }
}

unsigned OperatorTheta::max_theta_degree() const {
  int d = 0;
  for (const auto& c : coeffs_) d = std::max(d, c.degree());
  return static_cast<unsigned>(std::max(d, 0));
}

unsigned CompanionMat::max_theta_degree() const {
  int d = 0;
  for (const auto& c : entries) d = std::max(d, c.degree());
  return static_cast<unsigned>(std::max(d, 0));
}

std::size_t CompanionMat::max_bit_size() const {
  std::size_t b = 0;
  for (const auto& c : entries) {
    for (const auto& v : c.coeffs()) b = std::max(b, bit_size(v));
  }
  return b;
}

OperatorX op_mul(const OperatorX& a, const OperatorX& b) {
  if (a.is_zero() || b.is_zero()) return OperatorX();
  const std::size_t ma = a.coeffs().size() - 1;
  const std::size_t mb = b.coeffs().size() - 1;
  std::vector<IntPoly> out(ma + mb + 1);
  for (std::size_t i = 0; i <= ma; ++i) {
    const IntPoly& f = a.coeff(i);
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j <= mb; ++j) {
      // d^i g = sum_k C(i,k) g^{(k)} d^{i-k}
      IntPoly g = b.coeff(j);
      for (std::size_t k = 0; k <= i && !g.is_zero(); ++k) {
        out[i - k + j] += f * g.scaled(binom(i, k));
        g = g.derivative();
      }
    }
  }
  return OperatorX(std::move(out));
}

IntPoly theta_shift_arg(const IntPoly& q, const BigInt& a) {
  if (sgn(a) == 0 || q.is_zero()) return q;
  // Horner: (((q_d)(t+a) + q_{d-1})(t+a) + ...) + q_0
  std::vector<BigInt> acc;
  for (std::size_t i = q.coeffs().size(); i-- > 0;) {
    acc.push_back(0);
    for (std::size_t t = acc.size() - 1; t-- > 0;) {
      // multiply by (t + a): new[t+1] += old[t], new[t] = old[t] * a
      acc[t + 1] += acc[t];
      acc[t] *= a;
    }
    acc[0] += q.coeffs()[i];
  }
  return IntPoly(std::move(acc));
}

OperatorX shift(const OperatorX& l, const BigInt& a) {
  std::vector<IntPoly> out;
  out.reserve(l.coeffs().size());
  for (const auto& c : l.coeffs()) out.push_back(theta_shift_arg(c, a));
  return OperatorX(std::move(out));
}

BigInt pick_shift(const IntPoly& l_x) {
  if (l_x.is_zero()) throw ContractError("pick_shift: zero polynomial");
  BigInt b = 0;
  if (sgn(l_x.eval(b)) != 0) return b;
  for (long t = 1;; ++t) {
    b = t;
    if (sgn(l_x.eval(b)) != 0) return b;
    b = -t;
    if (sgn(l_x.eval(b)) != 0) return b;
  }
}

OperatorTheta phi(const OperatorX& l) {
  if (l.is_zero()) throw ContractError("phi: zero operator");
  const unsigned m = static_cast<unsigned>(l.order());
  const unsigned d = l.max_x_degree();
  // slot t holds the coefficient of d^{t - d}
  std::vector<IntPoly> buf(m + d + 1);
  IntPoly falling = IntPoly::constant(1);
  for (unsigned i = 0; i <= d; ++i) {
    if (i > 0) {
      // p_i = p_{i-1} * (theta - (i-1))
      falling = falling * IntPoly({BigInt(1 - static_cast<long>(i)), BigInt(1)});
    }
    for (unsigned j = 0; j <= m; ++j) {
      const BigInt& c = l.coeff(j).coeff(i);
      if (sgn(c) == 0) continue;
      buf[j + d - i] += falling.scaled(c);
    }
  }
  std::size_t lo = 0;
  while (lo < buf.size() && buf[lo].is_zero()) ++lo;
  const unsigned k = lo < d ? static_cast<unsigned>(d - lo) : 0;
  buf.erase(buf.begin(), buf.begin() + (d - k));
  return OperatorTheta(k, std::move(buf));
}

OperatorTheta ot_mul(const OperatorTheta& a, const OperatorTheta& b) {
  const int lo_a = -static_cast<int>(a.laurent_depth());
  const int lo_b = -static_cast<int>(b.laurent_depth());
  const int lo = lo_a + lo_b;
  std::vector<IntPoly> out(a.coeffs_shifted().size() + b.coeffs_shifted().size() - 1);
  for (std::size_t i = 0; i < a.coeffs_shifted().size(); ++i) {
    const IntPoly& ca = a.coeff_shifted(i);
    if (ca.is_zero()) continue;
    const int ea = lo_a + static_cast<int>(i);
    for (std::size_t j = 0; j < b.coeffs_shifted().size(); ++j) {
      const IntPoly& cb = b.coeff_shifted(j);
      if (cb.is_zero()) continue;
      out[i + j] += ca * theta_shift_arg(cb, BigInt(ea));
    }
  }
  // re-normalize the depth: exponents run from lo upward
  std::size_t first = 0;
  while (first < out.size() && out[first].is_zero()) ++first;
  if (first == out.size()) throw ContractError("ot_mul: zero product");
  const int min_exp = lo + static_cast<int>(first);
  const unsigned k = min_exp < 0 ? static_cast<unsigned>(-min_exp) : 0;
  // drop slots below exponent -k
  out.erase(out.begin(), out.begin() + (-static_cast<int>(k) - lo));
  return OperatorTheta(k, std::move(out));
}

CompanionMat companion(const OperatorTheta& l) {
  const IntPoly& top = l.leading();
  if (top.degree() != 0) {
    throw NormalizationRequired("leading coefficient is not an integer constant");
  }
  const unsigned s = l.s();
  if (s == 0) throw ContractError("companion: operator of order 0");
  CompanionMat m;
  m.s = s;
  m.l_theta = top.coeff(0);
  m.entries.assign(static_cast<std::size_t>(s) * s, IntPoly());
  for (unsigned i = 0; i + 1 < s; ++i) {
    m.entries[(i + 1) * s + i] = IntPoly::constant(m.l_theta);
  }
  for (unsigned i = 0; i < s; ++i) {
    m.entries[i * s + (s - 1)] = -l.coeff_shifted(i);
  }
  return m;
}

OperatorX transpose_xd(const OperatorX& l) {
  if (l.is_zero()) return OperatorX();
  const unsigned m = static_cast<unsigned>(l.order());
  const unsigned d = l.max_x_degree();
  std::vector<IntPoly> out(d + 1);
  for (unsigned j = 0; j <= m; ++j) {
    for (unsigned i = 0; i <= d; ++i) {
      const BigInt& c = l.coeff(j).coeff(i);
      if (sgn(c) == 0) continue;
      // c x^i d^j -> c (-1)^i d^i x^j = c (-1)^i sum_t C(i,t) j!/(j-t)! x^{j-t} d^{i-t}
      BigInt fall = 1;
      for (unsigned t = 0; t <= std::min(i, j); ++t) {
        BigInt term = c * binom(i, t) * fall;
        if (i % 2 == 1) term = -term;
        out[i - t] += IntPoly::monomial(std::move(term), j - t);
        fall *= static_cast<long>(j - t);
      }
    }
  }
  return OperatorX(std::move(out));
}

}  // namespace pcurv
