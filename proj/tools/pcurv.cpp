// Command line driver: computes the characteristic polynomials of the
// p-curvatures of an integer differential operator for all admissible
// primes p < N, as JSON lines.  Modes: the remainder-tree pipeline, the
// per-prime recursion oracle, or a comparison of the two.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcurv/errors.hpp"
#include "pcurv/opio.hpp"
#include "pcurv/pipeline.hpp"

namespace {

using namespace pcurv;

int run(int argc, char** argv) {
  CLI::App app{"characteristic polynomials of p-curvatures for all primes p < N"};

  std::string input;
  std::string out_path;
  std::string mode = "tree";
  std::string format = "jsonl";
  std::uint64_t N = 0;
  unsigned jobs = 1;
  bool include_small = false;
  bool stats = false;
  bool transpose = false;
  std::vector<std::uint64_t> bench_ns;

  app.add_option("--input", input, "operator file (JSON)")->required();
  app.add_option("--N", N, "prime bound (exclusive)");
  app.add_option("--mode", mode, "tree|oracle|compare")
      ->check(CLI::IsMember({"tree", "oracle", "compare"}));
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_flag("--include-small-primes", include_small,
               "also compute primes p <= d via the triangular path");
  app.add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
  app.add_flag("--stats", stats, "phase timings and tree node sizes to stderr");
  app.add_option("--bench", bench_ns, "comma-separated N list; emits a timing CSV")
      ->delimiter(',');
  app.add_flag("--transpose", transpose, "apply x -> -d, d -> x before the run");
  app.add_option("--format", format, "jsonl|compact")
      ->check(CLI::IsMember({"jsonl", "compact"}));

  CLI11_PARSE(app, argc, argv);

  OperatorX op = load_operator_file(input);
  if (transpose) op = transpose_xd(op);

  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    out_file.open(out_path);
    if (!out_file) throw FormatError("cannot open " + out_path);
    out = &out_file;
  }

  RunConfig cfg;
  cfg.include_small = include_small;
  cfg.jobs = jobs;
  cfg.collect_node_stats = stats;

  if (!bench_ns.empty()) {
    *out << bench_csv(bench(op, bench_ns, cfg));
    return 0;
  }

  if (N < 2) {
    std::cerr << "error: --N must be >= 2 (or use --bench)\n";
    return 2;
  }

  const bool compact = format == "compact";
  int exit_code = 0;

  auto emit = [&](const RunResult& r) {
    for (const auto& o : r.outcomes) *out << outcome_to_jsonl(o, compact) << "\n";
  };
  auto report_stats = [&](const RunResult& r) {
    if (!stats) return;
    std::cerr << "shift=" << r.shift_applied.get_str() << " m=" << r.m
              << " k=" << r.k << " d=" << r.d
              << " l_theta=" << r.l_theta.get_str() << "\n"
              << "normalize_s=" << r.normalize_s << " plan_s=" << r.plan_s
              << " leaves_s=" << r.tree.leaves_s
              << " ttree_s=" << r.tree.products_s
              << " wtree_s=" << r.tree.descent_s << " post_s=" << r.post_s
              << " total_s=" << r.total_s << "\n";
    write_node_stats_csv(std::cerr, r.node_stats);
  };

  if (mode == "tree") {
    RunResult r = charpoly_p_curv(op, N, cfg);
    emit(r);
    report_stats(r);
    if (r.had_internal_errors) exit_code = 1;
  } else if (mode == "oracle") {
    RunResult r = charpoly_p_curv_oracle(op, N, cfg);
    emit(r);
    if (r.had_internal_errors) exit_code = 1;
  } else {
    RunResult tree = charpoly_p_curv(op, N, cfg);
    const std::uint64_t cap = std::min<std::uint64_t>(N, 50);
    RunResult katz = charpoly_p_curv_oracle(op, cap, cfg);
    std::size_t compared = 0, mismatched = 0;
    for (const auto& o : katz.outcomes) {
      const auto it = std::find_if(
          tree.outcomes.begin(), tree.outcomes.end(),
          [&](const PrimeOutcome& t) { return t.p == o.p; });
      if (it == tree.outcomes.end()) {
        ++mismatched;
        std::cerr << "compare: p=" << o.p << " missing from tree output\n";
        continue;
      }
      ++compared;
      const bool same = it->excluded == o.excluded &&
                        (it->excluded ? it->reason == o.reason
                                      : it->record == o.record);
      if (!same) {
        ++mismatched;
        std::cerr << "compare: mismatch at p=" << o.p << "\n"
                  << "  tree:   " << outcome_to_jsonl(*it) << "\n"
                  << "  oracle: " << outcome_to_jsonl(o) << "\n";
      }
    }
    emit(tree);
    report_stats(tree);
    std::cerr << "compare: " << compared - mismatched << "/" << compared
              << " primes below " << cap << " agree\n";
    if (mismatched || tree.had_internal_errors || katz.had_internal_errors) {
      exit_code = 1;
    }
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pcurv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
