// End-to-end pipeline timings: N-scaling of the remainder-tree engine on a
// fixed order-3, degree-2 operator, plus the truncated charpoly alone.

#include <benchmark/benchmark.h>

#include "pcurv/pipeline.hpp"
#include "pcurv/postproc.hpp"

using namespace pcurv;

namespace {

OperatorX fixed_operator() {
  auto poly = [](std::vector<long> c) {
    return IntPoly(std::vector<BigInt>(c.begin(), c.end()));
  };
  return OperatorX({poly({2, 0, 1}), poly({0, 1}), poly({1, 0, 1}), poly({2})});
}

void BM_charpoly_p_curv(benchmark::State& state) {
  const OperatorX l = fixed_operator();
  RunConfig cfg;
  cfg.jobs = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    RunResult r = charpoly_p_curv(l, static_cast<std::uint64_t>(state.range(0)), cfg);
    benchmark::DoNotOptimize(r.outcomes.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_charpoly_trunc(benchmark::State& state) {
  const unsigned s = static_cast<unsigned>(state.range(0));
  Modulus m{BigInt(1000003)};
  TruncPolyMat a(s, 3, m);
  std::uint64_t v = 1;
  for (unsigned i = 0; i < s; ++i) {
    for (unsigned j = 0; j < s; ++j) {
      v = v * 6364136223846793005ull + 1442695040888963407ull;
      a.set(i, j, TruncPoly(3, {BigInt(static_cast<unsigned long>(v % 1000003)),
                                BigInt(static_cast<unsigned long>((v >> 16) % 1000003)),
                                BigInt(static_cast<unsigned long>((v >> 32) % 1000003))},
                            m));
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(charpoly_trunc(a).data());
  }
}

}  // namespace

BENCHMARK(BM_charpoly_p_curv)
    ->Args({1 << 10, 1})
    ->Args({1 << 12, 1})
    ->Args({1 << 14, 1})
    ->Args({1 << 14, 4})
    ->Unit(benchmark::kMillisecond)
    ->Complexity();

BENCHMARK(BM_charpoly_trunc)->DenseRange(2, 8, 2);

BENCHMARK_MAIN();
