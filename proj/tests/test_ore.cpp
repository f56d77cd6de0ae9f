#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcurv/ore.hpp"
#include "test_util.hpp"

using namespace pcurv;
using pcurv::testing::make_op;
using pcurv::testing::make_poly;
using pcurv::testing::make_rng;
using pcurv::testing::random_operator;

TEST_CASE("leibniz products") {
  const OperatorX d = make_op({{}, {1}});
  const OperatorX x = make_op({{0, 1}});
  CHECK(op_mul(d, x) == make_op({{1}, {0, 1}}));      // d x = x d + 1
  CHECK(op_mul(x, d) == make_op({{}, {0, 1}}));       // x d
  const OperatorX x2 = make_op({{0, 0, 1}});
  CHECK(op_mul(d, x2) == make_op({{0, 2}, {0, 0, 1}}));  // d x^2 = x^2 d + 2x
}

TEST_CASE("shift") {
  CHECK(shift(make_op({{}, {0, 1}}), 1) == make_op({{}, {1, 1}}));
  CHECK(shift(make_op({{0, -1}, {}, {1}}), 2) == make_op({{-2, -1}, {}, {1}}));
  auto rng = make_rng(10);
  for (int i = 0; i < 40; ++i) {
    OperatorX l = random_operator(rng, 3, 3, 50);
    BigInt a = static_cast<long>(i) - 20;
    CHECK(shift(shift(l, a), -a) == l);
  }
}

TEST_CASE("shift is an automorphism") {
  auto rng = make_rng(11);
  for (int i = 0; i < 25; ++i) {
    OperatorX l1 = random_operator(rng, 2, 2, 20);
    OperatorX l2 = random_operator(rng, 2, 2, 20);
    BigInt a = (i % 5) - 2;
    CHECK(shift(op_mul(l1, l2), a) == op_mul(shift(l1, a), shift(l2, a)));
    CHECK(shift(l1, a).order() == l1.order());
  }
}

TEST_CASE("pick_shift scan order") {
  CHECK(pick_shift(make_poly({0, 1})) == 1);        // l = x
  CHECK(pick_shift(make_poly({3})) == 0);           // constant
  CHECK(pick_shift(make_poly({0, -1, 1})) == -1);   // x(x-1): 0 and 1 are roots
}

TEST_CASE("phi on generators") {
  // phi(d) = d
  OperatorTheta pd = phi(make_op({{}, {1}}));
  CHECK(pd.laurent_depth() == 0);
  CHECK(pd.order() == 1);
  CHECK(pd.coeff_shifted(1) == make_poly({1}));
  CHECK(pd.coeff_shifted(0).is_zero());

  // phi(x) = theta d^{-1}: the single coefficient sits at exponent -1
  OperatorTheta px = phi(make_op({{0, 1}}));
  CHECK(px.laurent_depth() == 1);
  CHECK(px.order() == -1);
  CHECK(px.coeff_shifted(0) == make_poly({0, 1}));

  // phi(x d) = theta exactly
  OperatorTheta pxd = phi(make_op({{}, {0, 1}}));
  CHECK(pxd.laurent_depth() == 0);
  CHECK(pxd.order() == 0);
  CHECK(pxd.coeff_shifted(0) == make_poly({0, 1}));

  // phi(x^2 d^2) = theta^2 - theta (falling factorial)
  OperatorTheta p22 = phi(make_op({{}, {}, {0, 0, 1}}));
  CHECK(p22.laurent_depth() == 0);
  CHECK(p22.order() == 0);
  CHECK(p22.coeff_shifted(0) == make_poly({0, -1, 1}));
}

TEST_CASE("phi is a ring homomorphism") {
  auto rng = make_rng(12);
  for (int i = 0; i < 30; ++i) {
    OperatorX l1 = random_operator(rng, 3, 3, 30);
    OperatorX l2 = random_operator(rng, 3, 3, 30);
    CHECK(ot_mul(phi(l1), phi(l2)) == phi(op_mul(l1, l2)));
  }
}

TEST_CASE("leading coefficient and laurent depth after phi") {
  auto rng = make_rng(13);
  for (int i = 0; i < 60; ++i) {
    OperatorX l = random_operator(rng, 3, 3, 40);
    if (sgn(l.leading().eval(0)) == 0) continue;   // needs l_x(0) != 0
    OperatorTheta t = phi(l);
    CHECK(t.leading().degree() == 0);
    CHECK(t.leading().coeff(0) == l.leading().eval(0));
    CHECK(t.laurent_depth() <= l.max_x_degree());
    CHECK(t.s() <= static_cast<unsigned>(l.order()) + l.max_x_degree());
    CHECK(t.max_theta_degree() <= l.max_x_degree());
  }
}

TEST_CASE("theta_shift_arg") {
  CHECK(theta_shift_arg(make_poly({0, 0, 1}), 1) == make_poly({1, 2, 1}));
  CHECK(theta_shift_arg(make_poly({5, -3, 7}), 0) == make_poly({5, -3, 7}));
  CHECK(theta_shift_arg(make_poly({0, 1, 1}), 3) == make_poly({12, 7, 1}));
}

TEST_CASE("companion matrices") {
  // L = d^2 - theta -> [[0, theta], [1, 0]]
  OperatorTheta l1(0, {make_poly({0, -1}), IntPoly(), make_poly({1})});
  CompanionMat m1 = companion(l1);
  CHECK(m1.s == 2);
  CHECK(m1.l_theta == 1);
  CHECK(m1.at(0, 0).is_zero());
  CHECK(m1.at(0, 1) == make_poly({0, 1}));
  CHECK(m1.at(1, 0) == make_poly({1}));
  CHECK(m1.at(1, 1).is_zero());

  // L = 2d - theta -> 1x1 matrix [theta], scaled by l_theta = 2
  OperatorTheta l2(0, {make_poly({0, -1}), make_poly({2})});
  CompanionMat m2 = companion(l2);
  CHECK(m2.s == 1);
  CHECK(m2.l_theta == 2);
  CHECK(m2.at(0, 0) == make_poly({0, 1}));

  // L = d^3 - theta d - 1: last column (1, theta, 0)
  OperatorTheta l3(0, {make_poly({-1}), make_poly({0, -1}), IntPoly(), make_poly({1})});
  CompanionMat m3 = companion(l3);
  CHECK(m3.s == 3);
  CHECK(m3.at(0, 2) == make_poly({1}));
  CHECK(m3.at(1, 2) == make_poly({0, 1}));
  CHECK(m3.at(2, 2).is_zero());
  CHECK(m3.at(1, 0) == make_poly({1}));
  CHECK(m3.at(2, 1) == make_poly({1}));

  // non-constant leading coefficient asks for a shift
  OperatorTheta bad(0, {make_poly({1}), make_poly({0, 1})});
  CHECK_THROWS_AS(companion(bad), NormalizationRequired);
}

TEST_CASE("transpose_xd") {
  // x -> -d
  CHECK(transpose_xd(make_op({{0, 1}})) == make_op({{}, {-1}}));
  // d -> x
  CHECK(transpose_xd(make_op({{}, {1}})) == make_op({{0, 1}}));
  // x d -> -d x = -x d - 1
  CHECK(transpose_xd(make_op({{}, {0, 1}})) == make_op({{-1}, {0, -1}}));
  // involution up to sign conventions: applying twice returns x -> -x, d -> -d
  auto rng = make_rng(14);
  for (int i = 0; i < 20; ++i) {
    OperatorX l = random_operator(rng, 2, 2, 10);
    OperatorX twice = transpose_xd(transpose_xd(l));
    // compare against the parity image sum (-1)^{i+j} c_{ij} x^i d^j
    std::vector<IntPoly> want;
    for (int j = 0; j <= l.order(); ++j) {
      std::vector<BigInt> c;
      for (std::size_t i = 0; i < l.coeff(j).coeffs().size(); ++i) {
        BigInt v = l.coeff(j).coeffs()[i];
        if ((i + j) % 2 == 1) v = -v;
        c.push_back(v);
      }
      want.emplace_back(std::move(c));
    }
    CHECK(twice == OperatorX(std::move(want)));
  }
}
