// Truncated-polynomial product at growing coefficient sizes.  The packed
// (Kronecker) path takes over from the schoolbook loop around the 4096-bit
// operand threshold in truncpoly.cpp; sweep the sizes to see the crossover.

#include <benchmark/benchmark.h>

#include "pcurv/truncpoly.hpp"

using namespace pcurv;

namespace {

TruncPoly random_poly(gmp_randclass& rnd, unsigned e, unsigned bits) {
  std::vector<BigInt> c(e);
  for (auto& v : c) {
    v = rnd.get_z_bits(bits);
    if (rnd.get_z_bits(1) == 1) v = -v;
  }
  return TruncPoly(e, std::move(c));
}

void BM_poly_mul_trunc(benchmark::State& state) {
  const unsigned e = static_cast<unsigned>(state.range(0));
  const unsigned bits = static_cast<unsigned>(state.range(1));
  gmp_randclass rnd(gmp_randinit_default);
  rnd.seed(7);
  TruncPoly a = random_poly(rnd, e, bits);
  TruncPoly b = random_poly(rnd, e, bits);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly_mul_trunc(a, b));
  }
  state.SetComplexityN(state.range(1));
}

void BM_bigint_mul(benchmark::State& state) {
  gmp_randclass rnd(gmp_randinit_default);
  rnd.seed(8);
  BigInt a = rnd.get_z_bits(static_cast<unsigned long>(state.range(0)));
  BigInt b = rnd.get_z_bits(static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) {
    BigInt c = a * b;
    benchmark::DoNotOptimize(c.get_mpz_t());
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_poly_mul_trunc)
    ->Args({3, 256})
    ->Args({3, 1024})
    ->Args({3, 4096})
    ->Args({3, 16384})
    ->Args({3, 65536})
    ->Args({3, 262144})
    ->Args({6, 4096})
    ->Args({6, 65536});

BENCHMARK(BM_bigint_mul)->RangeMultiplier(4)->Range(1 << 10, 1 << 22)->Complexity();

BENCHMARK_MAIN();
