#ifndef PCURV_SIEVE_HPP
#define PCURV_SIEVE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pcurv/bigint.hpp"

namespace pcurv {

enum class ExclusionReason {
  kDividesLeading,  // p | l_theta: unrecoverable in this pipeline
  kLeDegree,        // p <= d: recoverable via the small-prime path
};

std::string to_string(ExclusionReason r);

// Partition of the primes below N.  A prime is admissible when it does not
// divide l_theta and p > d; with the small-prime extension enabled the
// second condition is dropped and primes p <= d are flagged small.
struct PrimePlan {
  std::uint64_t N = 0;
  unsigned d = 0;
  bool include_small = false;
  std::vector<std::uint64_t> admissible;                          // ascending
  std::vector<std::pair<std::uint64_t, ExclusionReason>> excluded;  // ascending

  bool is_small(std::uint64_t p) const { return p <= d; }
};

// Segmented sieve of Eratosthenes, ascending output.
std::vector<std::uint64_t> primes_below(std::uint64_t n);

PrimePlan plan_primes(std::uint64_t N, const BigInt& l_theta, unsigned d,
                      bool include_small = false);

}  // namespace pcurv

#endif
