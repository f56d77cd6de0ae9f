#include "pcurv/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "pcurv/errors.hpp"
#include "pcurv/oracle.hpp"
#include "pcurv/util.hpp"

namespace pcurv {

Normalized normalize_operator(const OperatorX& l) {
  if (l.is_zero() || l.order() < 1) {
    throw ContractError("operator must be nonzero of order >= 1");
  }
  Normalized n;
  n.a = pick_shift(l.leading());
  n.shifted = sgn(n.a) != 0 ? shift(l, n.a) : l;
  n.theta = phi(n.shifted);
  n.m = static_cast<unsigned>(l.order());
  n.k = n.theta.laurent_depth();
  n.d = n.theta.max_theta_degree();
  const IntPoly& top = n.theta.leading();
  if (top.degree() != 0) {
    throw NormalizationRequired("shifted operator has non-constant theta leading");
  }
  n.l_theta = top.coeff(0);
  return n;
}

namespace {

// Merge the plan's exclusions with the per-prime results, ascending p.
std::vector<PrimeOutcome> merge_outcomes(
    const PrimePlan& plan, std::vector<PrimeOutcome> computed) {
  std::vector<PrimeOutcome> out;
  out.reserve(plan.admissible.size() + plan.excluded.size());
  for (const auto& [p, reason] : plan.excluded) {
    PrimeOutcome o;
    o.p = p;
    o.excluded = true;
    o.reason = to_string(reason);
    out.push_back(std::move(o));
  }
  for (auto& o : computed) out.push_back(std::move(o));
  std::sort(out.begin(), out.end(),
            [](const PrimeOutcome& a, const PrimeOutcome& b) { return a.p < b.p; });
  return out;
}

}  // namespace

RunResult charpoly_p_curv(const OperatorX& l, std::uint64_t N, const RunConfig& cfg) {
  StopWatch total;
  RunResult res;

  Normalized n = normalize_operator(l);
  res.shift_applied = n.a;
  res.m = n.m;
  res.k = n.k;
  res.d = n.d;
  res.l_theta = n.l_theta;
  res.normalize_s = total.seconds();

  StopWatch sw_plan;
  PrimePlan plan = plan_primes(N, n.l_theta, n.d, cfg.include_small);
  res.plan_s = sw_plan.seconds();

  std::vector<PrimeOutcome> computed;
  if (!plan.admissible.empty()) {
    CompanionMat m = companion(n.theta);
    std::vector<PrimeFactorial> facts = matrix_factorial(
        m, N, n.d + 1, plan, cfg.jobs, &res.tree,
        cfg.collect_node_stats ? &res.node_stats : nullptr);

    StopWatch sw_post;
    const IntPoly& l_x_shifted = n.shifted.leading();
    computed.resize(facts.size());
    std::atomic<bool> poisoned{false};
    parallel_for(facts.size(), cfg.jobs, [&](std::size_t idx) {
      const std::uint64_t p = facts[idx].p;
      PrimeOutcome& o = computed[idx];
      o.p = p;
      try {
        TruncPolyMat bp = recover_Bp(facts[idx].value, n.l_theta, p);
        YPolyTrunc chi = charpoly_trunc(bp);
        YPolyTrunc xi = xi_scale(std::move(chi), n.l_theta, p);
        BivarPoly r = plan.is_small(p)
                          ? reverse_iso_small(xi, p, n.d, n.k, n.m)
                          : reverse_iso(xi, p, n.k, n.m);
        o.record = finalize(r, l_x_shifted, n.a, n.m);
      } catch (const NonzeroLowYCoefficients&) {
        o.excluded = true;
        o.reason = "NONZERO_LOW_Y";
        poisoned = true;
      } catch (const ExactDivisionFailed&) {
        o.excluded = true;
        o.reason = "DIVISION_INEXACT";
        poisoned = true;
      }
    });
    res.had_internal_errors = poisoned.load();
    res.post_s = sw_post.seconds();
  }

  res.outcomes = merge_outcomes(plan, std::move(computed));
  res.total_s = total.seconds();
  return res;
}

RunResult charpoly_p_curv_oracle(const OperatorX& l, std::uint64_t N,
                                 const RunConfig& cfg) {
  StopWatch total;
  RunResult res;

  Normalized n = normalize_operator(l);
  res.shift_applied = n.a;
  res.m = n.m;
  res.k = n.k;
  res.d = n.d;
  res.l_theta = n.l_theta;

  PrimePlan plan = plan_primes(N, n.l_theta, n.d, cfg.include_small);

  std::vector<PrimeOutcome> computed(plan.admissible.size());
  std::atomic<bool> poisoned{false};
  parallel_for(plan.admissible.size(), cfg.jobs, [&](std::size_t idx) {
    const std::uint64_t p = plan.admissible[idx];
    PrimeOutcome& o = computed[idx];
    o.p = p;
    try {
      o.record = oracle::katz_record(l, p, n.a);
    } catch (const ExactDivisionFailed&) {
      o.excluded = true;
      o.reason = "DIVISION_INEXACT";
      poisoned = true;
    }
  });
  res.had_internal_errors = poisoned.load();
  res.outcomes = merge_outcomes(plan, std::move(computed));
  res.total_s = total.seconds();
  return res;
}

std::vector<BenchRow> bench(const OperatorX& l, const std::vector<std::uint64_t>& ns,
                            const RunConfig& cfg) {
  std::vector<BenchRow> rows;
  rows.reserve(ns.size());
  for (std::uint64_t n : ns) {
    RunResult r = charpoly_p_curv(l, n, cfg);
    BenchRow row;
    row.N = n;
    row.total_s = r.total_s;
    row.leaves_s = r.tree.leaves_s;
    row.ttree_s = r.tree.products_s;
    row.wtree_s = r.tree.descent_s;
    row.post_s = r.post_s;
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "N,total_s,leaves_s,ttree_s,wtree_s,post_s\n";
  os.setf(std::ios::fixed);
  os.precision(6);
  for (const auto& r : rows) {
    os << r.N << "," << r.total_s << "," << r.leaves_s << "," << r.ttree_s << ","
       << r.wtree_s << "," << r.post_s << "\n";
  }
  return os.str();
}

std::string outcome_to_jsonl(const PrimeOutcome& o, bool compact) {
  if (o.excluded) return exclusion_to_jsonl(o.p, o.reason);
  return compact ? record_to_jsonl_compact(o.record) : record_to_jsonl(o.record);
}

}  // namespace pcurv
