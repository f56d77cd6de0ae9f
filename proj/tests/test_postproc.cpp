#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcurv/postproc.hpp"
#include "test_util.hpp"

using namespace pcurv;
using pcurv::testing::make_poly;
using pcurv::testing::make_rng;

namespace {

TruncPoly tp(unsigned e, std::vector<long> c, OptModulus m) {
  return TruncPoly(e, std::vector<BigInt>(c.begin(), c.end()), std::move(m));
}

// Exact bivariate char poly over Z[t][Y] by cofactor expansion, then
// truncation: the independent reference for charpoly_trunc.
using YIntPoly = std::vector<IntPoly>;

YIntPoly yp_add(const YIntPoly& a, const YIntPoly& b) {
  YIntPoly r = a;
  if (r.size() < b.size()) r.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

YIntPoly yp_mul(const YIntPoly& a, const YIntPoly& b) {
  if (a.empty() || b.empty()) return {};
  YIntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

YIntPoly yp_neg(const YIntPoly& a) {
  YIntPoly r;
  for (const auto& q : a) r.push_back(-q);
  return r;
}

YIntPoly cofactor_det(const std::vector<YIntPoly>& mat, unsigned n) {
  if (n == 1) return mat[0];
  YIntPoly acc;
  for (unsigned j = 0; j < n; ++j) {
    std::vector<YIntPoly> minor;
    for (unsigned i = 1; i < n; ++i) {
      for (unsigned jj = 0; jj < n; ++jj) {
        if (jj != j) minor.push_back(mat[i * n + jj]);
      }
    }
    YIntPoly term = yp_mul(mat[j], cofactor_det(minor, n - 1));
    acc = yp_add(acc, j % 2 ? yp_neg(term) : term);
  }
  return acc;
}

YPolyTrunc cofactor_charpoly(const TruncPolyMat& a) {
  const unsigned n = a.dim();
  std::vector<YIntPoly> ym(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      YIntPoly v;
      v.push_back(-a.at(i, j).to_intpoly());
      if (i == j) v.push_back(IntPoly::constant(1));
      ym[i * n + j] = std::move(v);
    }
  }
  YIntPoly det = cofactor_det(ym, n);
  YPolyTrunc out;
  for (unsigned i = 0; i <= n; ++i) {
    out.push_back(TruncPoly::from_intpoly(i < det.size() ? det[i] : IntPoly(),
                                          a.trunc_order(), a.modulus()));
  }
  return out;
}

}  // namespace

TEST_CASE("charpoly of the identity") {
  Modulus m5{BigInt(5)};
  TruncPolyMat id = TruncPolyMat::identity(2, 2, m5);
  YPolyTrunc chi = charpoly_trunc(id);
  REQUIRE(chi.size() == 3);
  CHECK(chi[0] == tp(2, {1}, m5));   // +1
  CHECK(chi[1] == tp(2, {3}, m5));   // -2 = 3 mod 5
  CHECK(chi[2] == tp(2, {1}, m5));
}

TEST_CASE("charpoly trace and determinant") {
  Modulus m7{BigInt(7)};
  TruncPolyMat a(2, 2, m7);
  a.set(0, 1, tp(2, {0, 1}, m7));
  a.set(1, 0, tp(2, {1}, m7));
  YPolyTrunc chi = charpoly_trunc(a);  // Y^2 - t
  REQUIRE(chi.size() == 3);
  CHECK(chi[0] == tp(2, {0, 6}, m7));
  CHECK(chi[1].is_zero());
  CHECK(chi[2] == tp(2, {1}, m7));
}

TEST_CASE("charpoly matches cofactor expansion on random matrices") {
  auto rng = make_rng(30);
  std::uniform_int_distribution<long> coeff(0, 4);
  Modulus m5{BigInt(5)};
  for (int rep = 0; rep < 25; ++rep) {
    TruncPolyMat a(3, 3, m5);
    for (unsigned i = 0; i < 3; ++i) {
      for (unsigned j = 0; j < 3; ++j) {
        a.set(i, j, tp(3, {coeff(rng), coeff(rng), coeff(rng)}, m5));
      }
    }
    YPolyTrunc fast = charpoly_trunc(a);
    YPolyTrunc slow = cofactor_charpoly(a);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
  }
}

TEST_CASE("recover_Bp") {
  Modulus m5{BigInt(5)};
  TruncPolyMat b(2, 2, m5);
  b.set(0, 0, tp(2, {1, 2}, m5));
  b.set(1, 0, tp(2, {3}, m5));
  CHECK(recover_Bp(b.scaled(2), 2, 5) == b);
  CHECK(recover_Bp(b, 1, 5) == b);

  // Fermat: l^p B = l B mod p, so recover cancels an l^p scaling exactly
  auto rng = make_rng(31);
  std::uniform_int_distribution<long> coeff(0, 6);
  Modulus m7{BigInt(7)};
  for (int rep = 0; rep < 10; ++rep) {
    TruncPolyMat r(2, 2, m7);
    for (unsigned i = 0; i < 2; ++i) {
      for (unsigned j = 0; j < 2; ++j) r.set(i, j, tp(2, {coeff(rng), coeff(rng)}, m7));
    }
    BigInt lp;
    mpz_ui_pow_ui(lp.get_mpz_t(), 3, 7);  // 3^p
    CHECK(recover_Bp(r.scaled(lp), 3, 7) == r);
  }
  CHECK_THROWS_AS(recover_Bp(b, 5, 5), NotInvertible);
}

TEST_CASE("xi_scale") {
  Modulus m5{BigInt(5)};
  YPolyTrunc chi{tp(2, {0, 4}, m5), tp(2, {1}, m5)};  // (Y - t) with -t = 4t
  YPolyTrunc same = xi_scale(chi, 1, 5);
  CHECK(same[0] == chi[0]);
  YPolyTrunc scaled = xi_scale(chi, 2, 5);
  CHECK(scaled[0] == tp(2, {0, 3}, m5));  // 2 * 4t = 8t = 3t
  CHECK(scaled[1] == tp(2, {2}, m5));
}

TEST_CASE("reverse_iso identities") {
  for (std::uint64_t p : {3ull, 5ull, 7ull, 97ull}) {
    Modulus mp{BigInt(static_cast<unsigned long>(p))};
    // Q = -t, the truncation of t^p - t: transports to x Y
    YPolyTrunc q{tp(2, {0, static_cast<long>(p - 1)}, mp)};
    BivarPoly r = reverse_iso(q, p, 0, 1);
    REQUIRE(r.degY() == 1);
    CHECK(r.coeff(0).is_zero());
    CHECK(r.coeff(1) == make_poly({0, 1}));

    // constants are fixed
    YPolyTrunc one{tp(2, {1}, mp)};
    BivarPoly r1 = reverse_iso(one, p, 0, 0);
    CHECK(r1.degY() == 0);
    CHECK(r1.coeff(0) == make_poly({1}));
  }

  // Q = Y^2 + 3 t Y -> Y^2 - 3 x Y^2 (mod p)
  const std::uint64_t p = 11;
  Modulus mp{BigInt(11)};
  YPolyTrunc q{tp(2, {}, mp), tp(2, {0, 3}, mp), tp(2, {1}, mp)};
  BivarPoly r = reverse_iso(q, p, 0, 2);
  REQUIRE(r.degY() == 2);
  CHECK(r.coeff(0).is_zero());
  CHECK(r.coeff(1).is_zero());
  CHECK(r.coeff(2) == IntPoly(std::vector<BigInt>{BigInt(1), BigInt(8)}));
}

TEST_CASE("reverse_iso Y^k division") {
  Modulus m5{BigInt(5)};
  // Y * (something) with k = 1 divides cleanly
  YPolyTrunc q{tp(2, {}, m5), tp(2, {2}, m5)};
  BivarPoly r = reverse_iso(q, 5, 1, 0);
  CHECK(r.degY() == 0);
  CHECK(r.coeff(0) == make_poly({2}));

  // nonzero low coefficient is an internal-consistency failure
  YPolyTrunc bad{tp(2, {1}, m5), tp(2, {2}, m5)};
  CHECK_THROWS_AS(reverse_iso(bad, 5, 1, 0), NonzeroLowYCoefficients);
}

namespace {

// forward map for the small-prime path: t-coordinates from (t^p-t)-coords
std::vector<long> small_forward(const std::vector<long>& q, std::uint64_t p) {
  std::vector<long> out(q.size(), 0);
  const long pl = static_cast<long>(p);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t t = 0; t * (p - 1) <= i; ++t) {
      const std::size_t n = i - t * (p - 1);
      if (n < t) break;
      BigInt b;
      mpz_bin_uiui(b.get_mpz_t(), n, t);
      long term = static_cast<long>(mpz_fdiv_ui(b.get_mpz_t(), p)) *
                  (q[n] % pl);
      if ((i + t * p) % 2 == 1) term = -term;
      out[i] = ((out[i] + term) % pl + pl) % pl;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("reverse_iso_small") {
  // p > d degenerates to reverse_iso
  auto rng = make_rng(32);
  std::uniform_int_distribution<long> coeff(0, 10);
  for (int rep = 0; rep < 20; ++rep) {
    Modulus m11{BigInt(11)};
    YPolyTrunc q{tp(3, {coeff(rng), coeff(rng), coeff(rng)}, m11),
                 tp(3, {coeff(rng), coeff(rng), coeff(rng)}, m11)};
    BivarPoly a = reverse_iso(q, 11, 0, 1);
    BivarPoly b = reverse_iso_small(q, 11, 2, 0, 1);
    CHECK(a == b);
  }

  // p = 2, d = 2: forward-then-invert is the identity on random coords
  auto rng2 = make_rng(33);
  std::uniform_int_distribution<long> bit(0, 1);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<long> coords{bit(rng2), bit(rng2), bit(rng2)};
    std::vector<long> tcoords = small_forward(coords, 2);
    Modulus m2{BigInt(2)};
    YPolyTrunc q{tp(3, tcoords, m2)};
    BivarPoly r = reverse_iso_small(q, 2, 2, 0, 0);
    // expected transport of the original coords: q_j x^j Y^j
    for (std::size_t j = 0; j < coords.size(); ++j) {
      CHECK(r.coeff(j).coeff(j) == coords[j] % 2);
    }
  }
}

TEST_CASE("finalize") {
  // identity case
  BivarPoly r0;
  r0.p = 5;
  r0.coeffs = {make_poly({0, 1}), make_poly({1})};  // Y + x
  CharPolyRecord rec0 = finalize(r0, make_poly({1}), 0, 1);
  CHECK(rec0.poly == r0);
  CHECK(!rec0.nilpotent);

  // R = (x+1) Y + (x+1) x, l_x = x+1 -> Y + x
  BivarPoly r1;
  r1.p = 5;
  r1.coeffs = {make_poly({0, 1, 1}), make_poly({1, 1})};
  CharPolyRecord rec1 = finalize(r1, make_poly({1, 1}), 0, 1);
  CHECK(rec1.poly.coeff(0) == make_poly({0, 1}));
  CHECK(rec1.poly.coeff(1) == make_poly({1}));

  // inexact division is surfaced
  BivarPoly r2;
  r2.p = 5;
  r2.coeffs = {make_poly({1}), make_poly({1, 1})};
  CHECK_THROWS_AS(finalize(r2, make_poly({1, 1}), 0, 1), ExactDivisionFailed);

  // nilpotent flag: Y^2
  BivarPoly r3;
  r3.p = 7;
  r3.coeffs = {IntPoly(), IntPoly(), make_poly({1})};
  CharPolyRecord rec3 = finalize(r3, make_poly({1}), 0, 2);
  CHECK(rec3.nilpotent);
}

TEST_CASE("finalize applies the back-shift") {
  // R = Y - x at p = 7 with a = 2: expect Y - (x - 2) = Y + (2 - x)
  BivarPoly r;
  r.p = 7;
  r.coeffs = {make_poly({0, 6}), make_poly({1})};
  CharPolyRecord rec = finalize(r, make_poly({1}), 2, 1);
  CHECK(rec.shift_applied == 2);
  CHECK(rec.poly.coeff(0) == make_poly({2, 6}));
}

TEST_CASE("fermat cancellations for small p") {
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    const BigInt pb(p);
    // l^p = l and l^{p-1} = 1 mod p for l coprime to p
    for (long l = 1; l < static_cast<long>(p); ++l) {
      BigInt lp;
      mpz_ui_pow_ui(lp.get_mpz_t(), l, p);
      CHECK(mod_floor(lp, pb) == l);
      BigInt lp1;
      mpz_ui_pow_ui(lp1.get_mpz_t(), l, p - 1);
      CHECK(mod_floor(lp1, pb) == 1);
    }
    // (x - a)^p = x^p - a and l_x(x)^p = l_x(x^p) mod p
    auto rng = make_rng(34 + p);
    for (int rep = 0; rep < 5; ++rep) {
      IntPoly lx = pcurv::testing::random_intpoly(rng, 2, 9);
      IntPoly powp = IntPoly::constant(1);
      for (unsigned long i = 0; i < p; ++i) powp = powp * lx;
      powp = powp.reduced_mod(pb);
      std::vector<BigInt> spread;
      for (std::size_t i = 0; i < lx.coeffs().size(); ++i) {
        spread.resize(i * p + 1);
        spread[i * p] = mod_floor(lx.coeffs()[i], pb);
      }
      CHECK(powp == IntPoly(std::move(spread)));

      const long a = static_cast<long>(rng() % p);
      IntPoly xa = make_poly({-a, 1});
      IntPoly xap = IntPoly::constant(1);
      for (unsigned long i = 0; i < p; ++i) xap = xap * xa;
      xap = xap.reduced_mod(pb);
      std::vector<BigInt> want(p + 1);
      want[0] = mod_floor(BigInt(-a), pb);
      want[p] = 1;
      CHECK(xap == IntPoly(std::move(want)));
    }
  }
}

TEST_CASE("jsonl output") {
  CharPolyRecord rec;
  rec.p = 5;
  rec.m = 2;
  rec.poly.p = 5;
  rec.poly.coeffs = {make_poly({0, 3}), IntPoly(), make_poly({1})};
  rec.nilpotent = false;
  rec.shift_applied = 0;
  CHECK(record_to_jsonl(rec) ==
        "{\"p\":5,\"m\":2,\"coeffs\":[[\"0\",\"3\"],[],[\"1\"]],"
        "\"nilpotent\":false,\"shift\":\"0\"}");
  CHECK(record_to_jsonl_compact(rec) == "{\"p\":5,\"nilpotent\":false}");
  CHECK(exclusion_to_jsonl(2, "DIVIDES_LEADING") ==
        "{\"p\":2,\"excluded\":\"DIVIDES_LEADING\"}");
}
