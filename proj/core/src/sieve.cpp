#include "pcurv/sieve.hpp"

#include <algorithm>
#include <cmath>

#include "pcurv/errors.hpp"

namespace pcurv {

namespace {
// O(sqrt(n) + segment) memory
constexpr std::uint64_t kSegmentSize = 1u << 20;
}

std::string to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::kDividesLeading: return "DIVIDES_LEADING";
    case ExclusionReason::kLeDegree: return "LE_DEGREE";
  }
  return "?";
}

std::vector<std::uint64_t> primes_below(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n <= 2) return out;
  const std::uint64_t limit = n - 1;

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    if (i <= limit) base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  std::vector<char> seg(kSegmentSize);
  for (std::uint64_t low = 2; low <= limit; low += kSegmentSize) {
    const std::uint64_t high = std::min(low + kSegmentSize - 1, limit);
    std::fill(seg.begin(), seg.begin() + (high - low + 1), 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) seg[j - low] = 0;
    }
    for (std::uint64_t v = low; v <= high; ++v) {
      if (seg[v - low]) out.push_back(v);
    }
  }
  return out;
}

PrimePlan plan_primes(std::uint64_t N, const BigInt& l_theta, unsigned d,
                      bool include_small) {
  if (N < 2) throw ContractError("plan_primes: N must be >= 2");
  if (sgn(l_theta) == 0) throw ContractError("plan_primes: l_theta must be nonzero");

  PrimePlan plan;
  plan.N = N;
  plan.d = d;
  plan.include_small = include_small;
  for (std::uint64_t p : primes_below(N)) {
    // DIVIDES_LEADING takes precedence: it cannot be recovered downstream.
    if (mpz_divisible_ui_p(l_theta.get_mpz_t(), p)) {
      plan.excluded.emplace_back(p, ExclusionReason::kDividesLeading);
    } else if (p <= d && !include_small) {
      plan.excluded.emplace_back(p, ExclusionReason::kLeDegree);
    } else {
      plan.admissible.push_back(p);
    }
  }
  return plan;
}

}  // namespace pcurv
