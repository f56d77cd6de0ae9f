// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion.  Exit code 0 iff all pass.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pcurv/oracle.hpp"
#include "pcurv/pipeline.hpp"
#include "pcurv/util.hpp"
#include "test_util.hpp"

using namespace pcurv;
using pcurv::testing::make_op;
using pcurv::testing::make_rng;
using pcurv::testing::random_operator;

namespace {

int g_failures = 0;

void run_criterion(int idx, const std::string& name,
                   const std::function<bool(std::string&)>& body) {
  StopWatch sw;
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", idx,
              name.c_str(), sw.seconds(), detail.empty() ? "" : " - ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// 1. tree pipeline vs per-prime recursion, exact, 200 operators, p < 50.
// Outcomes must match entirely: records coefficient for coefficient, and
// exclusions (including the inexact-division ones both routes report when
// the charpoly of the p-curvature is genuinely not polynomial) with equal
// reasons.
bool oracle_equivalence(std::string& detail) {
  auto rng = make_rng(101);
  std::size_t records = 0, exclusions = 0;
  for (int rep = 0; rep < 200; ++rep) {
    OperatorX l = random_operator(rng, 3, 2, 63);
    RunResult tree = charpoly_p_curv(l, 50, RunConfig{});
    RunResult katz = charpoly_p_curv_oracle(l, 50, RunConfig{});
    if (tree.outcomes.size() != katz.outcomes.size()) {
      detail = "outcome count mismatch at rep " + std::to_string(rep);
      return false;
    }
    for (std::size_t i = 0; i < tree.outcomes.size(); ++i) {
      const auto& a = tree.outcomes[i];
      const auto& b = katz.outcomes[i];
      const bool same = a.p == b.p && a.excluded == b.excluded &&
                        (a.excluded ? a.reason == b.reason : a.record == b.record);
      if (!same) {
        detail = "mismatch at rep " + std::to_string(rep) +
                 ", p=" + std::to_string(a.p);
        return false;
      }
      (a.excluded ? exclusions : records) += 1;
    }
  }
  detail = std::to_string(records) + " records and " +
           std::to_string(exclusions) + " exclusions agree";
  return records > 1000;
}

// 2. reverse_iso(-t) = x Y for all primes 3 <= p < 100
bool reverse_iso_identity(std::string& detail) {
  std::size_t n = 0;
  for (std::uint64_t p : primes_below(100)) {
    if (p < 3) continue;
    Modulus mp{BigInt(static_cast<unsigned long>(p))};
    YPolyTrunc q{TruncPoly(2, {BigInt(0), BigInt(static_cast<unsigned long>(p - 1))}, mp)};
    BivarPoly r = reverse_iso(q, p, 0, 1);
    const bool ok = r.degY() == 1 && r.coeff(0).is_zero() &&
                    r.coeff(1) == IntPoly({BigInt(0), BigInt(1)});
    if (!ok) {
      detail = "failed at p=" + std::to_string(p);
      return false;
    }
    ++n;
  }
  detail = std::to_string(n) + " primes";
  return true;
}

// 3. Wilson: W leaf before the left multiplication is -1 mod p, p < 1e5
bool wilson_smoke(std::string& detail) {
  CompanionMat m;
  m.s = 1;
  m.l_theta = 1;
  m.entries = {IntPoly({BigInt(0), BigInt(1)})};
  const std::uint64_t N = 100000;
  PrimePlan plan = plan_primes(N, 1, 0, false);
  FactorialTrees trees = build_leaves(m, N, 1, plan, 4);
  build_product_trees(trees, 4);
  std::vector<PrefixLeaf> leaves = descend_remainders(std::move(trees), 4);
  if (leaves.size() != plan.admissible.size()) {
    detail = "leaf count mismatch";
    return false;
  }
  for (const auto& leaf : leaves) {
    const TruncPoly& v = leaf.w.at(0, 0);
    if (!(v.coeff(0) == static_cast<unsigned long>(leaf.p - 1))) {
      detail = "(p-1)! != -1 at p=" + std::to_string(leaf.p);
      return false;
    }
  }
  detail = std::to_string(leaves.size()) + " primes";
  return true;
}

// 4. pipeline(shift(L,a)) then x -> x-a equals pipeline(L), p < 30
bool shift_covariance(std::string& detail) {
  auto rng = make_rng(104);
  std::size_t compared = 0;
  for (int rep = 0; rep < 20; ++rep) {
    OperatorX l = random_operator(rng, 3, 2, 40);
    RunResult base = charpoly_p_curv(l, 30, RunConfig{});
    for (long a : {1L, 2L, -1L}) {
      RunResult moved = charpoly_p_curv(shift(l, a), 30, RunConfig{});
      for (const auto& o : moved.outcomes) {
        if (o.excluded) continue;
        const auto it = std::find_if(
            base.outcomes.begin(), base.outcomes.end(),
            [&](const PrimeOutcome& b) { return b.p == o.p && !b.excluded; });
        if (it == base.outcomes.end()) continue;
        if (!(bivar_shift_x(o.record.poly, -a) == it->record.poly)) {
          detail = "mismatch at rep " + std::to_string(rep) +
                   ", a=" + std::to_string(a) + ", p=" + std::to_string(o.p);
          return false;
        }
        ++compared;
      }
    }
  }
  if (compared == 0) {
    detail = "nothing compared";
    return false;
  }
  detail = std::to_string(compared) + " records compared";
  return true;
}

// 5. nilpotency scan: 2(1+x)d - 1 always nilpotent, d - 1 never, p < 1000
bool nilpotency_scan(std::string& detail) {
  RunResult alg = charpoly_p_curv(make_op({{-1}, {2, 2}}), 1000, RunConfig{});
  std::size_t n = 0;
  for (const auto& o : alg.outcomes) {
    if (o.excluded) continue;
    ++n;
    if (!o.record.nilpotent || !(o.record.poly.coeff(0).is_zero())) {
      detail = "2(1+x)d - 1 not nilpotent at p=" + std::to_string(o.p);
      return false;
    }
  }
  if (n == 0) {
    detail = "no admissible primes";
    return false;
  }
  RunResult exp = charpoly_p_curv(make_op({{-1}, {1}}), 1000, RunConfig{});
  for (const auto& o : exp.outcomes) {
    if (o.excluded) continue;
    if (o.record.nilpotent) {
      detail = "d - 1 flagged nilpotent at p=" + std::to_string(o.p);
      return false;
    }
  }
  detail = std::to_string(n) + " nilpotent primes";
  return true;
}

// 6. wall-clock(2N)/wall-clock(N) <= 2.5 at power-of-two boundaries
bool quasi_linearity(std::string& detail) {
  // order 3, degree 2, constant leading coefficient
  const OperatorX l = make_op({{2, 0, 1}, {0, 1}, {1, 0, 1}, {2}});
  RunConfig cfg;
  cfg.jobs = 1;
  auto median_time = [&](std::uint64_t n) {
    std::vector<double> t;
    for (int rep = 0; rep < 3; ++rep) {
      RunResult r = charpoly_p_curv(l, n, cfg);
      t.push_back(r.total_s);
    }
    std::sort(t.begin(), t.end());
    return t[1];
  };
  const double t14 = median_time(1ull << 14);
  const double t15 = median_time(1ull << 15);
  const double t16 = median_time(1ull << 16);
  const double r1 = t15 / t14;
  const double r2 = t16 / t15;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "t(2^14)=%.2fs t(2^15)=%.2fs t(2^16)=%.2fs ratios %.2f, %.2f",
                t14, t15, t16, r1, r2);
  detail = buf;
  return r1 <= 2.5 && r2 <= 2.5;
}

// 7. theta-side charpoly coefficients lie in F_p[t^p - t]
bool formofresult_membership(std::string& detail) {
  std::vector<OperatorX> ops = {
      make_op({{0, -1}, {}, {1}}),    // airy
      make_op({{-1}, {2, 2}}),
      make_op({{-1}, {0, 1}}),
      make_op({{1, 2}, {0, 0, 3}, {5}}),
  };
  auto rng = make_rng(107);
  while (ops.size() < 16) ops.push_back(random_operator(rng, 3, 2, 30));

  std::size_t checked = 0;
  for (const auto& l : ops) {
    Normalized n;
    try {
      n = normalize_operator(l);
    } catch (const Error&) {
      continue;
    }
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
      if (mpz_divisible_ui_p(n.l_theta.get_mpz_t(), p)) continue;
      oracle::ThetaOracle to = oracle::theta_product_oracle(n.theta, p);
      if (!to.in_frobenius_subring) {
        detail = "membership violated at p=" + std::to_string(p);
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " (operator, p) pairs";
  return checked >= 40;
}

// 8. Xi is multiplicative on 20 random pairs at p in {3, 5, 7}
bool xi_multiplicativity(std::string& detail) {
  auto rng = make_rng(108);
  std::size_t pairs = 0, checks = 0;
  while (pairs < 20) {
    OperatorX l1 = random_operator(rng, 2, 2, 20);
    OperatorX l2 = random_operator(rng, 2, 2, 20);
    bool any = false;
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
      try {
        if (!oracle::xi_multiplicativity_check(l1, l2, p)) {
          detail = "multiplicativity failed at p=" + std::to_string(p);
          return false;
        }
        any = true;
        ++checks;
      } catch (const NotReducible&) {
        // leading coefficient vanished mod p
      }
    }
    if (any) ++pairs;
  }
  detail = std::to_string(checks) + " checks over " + std::to_string(pairs) +
           " pairs";
  return true;
}

}  // namespace

int main() {
  run_criterion(1, "tree pipeline equals the per-prime recursion (p < 50)",
                oracle_equivalence);
  run_criterion(2, "reverse_iso maps -t to x*Y (3 <= p < 100)",
                reverse_iso_identity);
  run_criterion(3, "Wilson smoke test, (p-1)! = -1 mod p (p < 1e5)",
                wilson_smoke);
  run_criterion(4, "shift covariance (p < 30)", shift_covariance);
  run_criterion(5, "nilpotency scan (p < 1000)", nilpotency_scan);
  run_criterion(6, "quasi-linear scaling in N (ratios <= 2.5)",
                quasi_linearity);
  run_criterion(7, "charpoly coefficients lie in F_p[t^p - t]",
                formofresult_membership);
  run_criterion(8, "Xi multiplicativity on random pairs", xi_multiplicativity);

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
