#ifndef PCURV_PIPELINE_HPP
#define PCURV_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pcurv/ore.hpp"
#include "pcurv/postproc.hpp"
#include "pcurv/sieve.hpp"
#include "pcurv/tree.hpp"

namespace pcurv {

enum class RunMode { kTree, kOracle, kCompare };

struct RunConfig {
  RunMode mode = RunMode::kTree;
  bool include_small = false;
  unsigned jobs = 1;
  bool collect_node_stats = false;
};

// Per-prime outcome, ascending p: either a record or an exclusion reason.
struct PrimeOutcome {
  std::uint64_t p = 0;
  bool excluded = false;
  std::string reason;
  CharPolyRecord record;
};

struct RunResult {
  BigInt shift_applied = 0;
  unsigned m = 0;
  unsigned k = 0;
  unsigned d = 0;  // max theta-degree; truncation order is d + 1
  BigInt l_theta = 0;
  std::vector<PrimeOutcome> outcomes;
  // DIVISION_INEXACT / NONZERO_LOW_Y outcomes leave the run completed but
  // poisoned; callers must not consume partial output silently.
  bool had_internal_errors = false;

  double normalize_s = 0;
  double plan_s = 0;
  TreeTimings tree;
  double post_s = 0;
  double total_s = 0;
  std::vector<TreeNodeStat> node_stats;
};

// The shift / phi / companion normalization shared by all modes.
struct Normalized {
  BigInt a = 0;
  OperatorX shifted;
  OperatorTheta theta;
  unsigned m = 0;
  unsigned k = 0;
  unsigned d = 0;
  BigInt l_theta = 0;
};

Normalized normalize_operator(const OperatorX& l);

// Characteristic polynomials of the p-curvatures of l for every admissible
// prime p < N, through the remainder-tree engine.
RunResult charpoly_p_curv(const OperatorX& l, std::uint64_t N, const RunConfig& cfg);

// Same records through the per-prime recursion oracle (slow; ground truth).
RunResult charpoly_p_curv_oracle(const OperatorX& l, std::uint64_t N,
                                 const RunConfig& cfg);

struct BenchRow {
  std::uint64_t N = 0;
  double total_s = 0;
  double leaves_s = 0;
  double ttree_s = 0;
  double wtree_s = 0;
  double post_s = 0;
};

std::vector<BenchRow> bench(const OperatorX& l, const std::vector<std::uint64_t>& ns,
                            const RunConfig& cfg);
std::string bench_csv(const std::vector<BenchRow>& rows);

std::string outcome_to_jsonl(const PrimeOutcome& o, bool compact = false);

}  // namespace pcurv

#endif
