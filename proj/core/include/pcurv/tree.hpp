#ifndef PCURV_TREE_HPP
#define PCURV_TREE_HPP

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "pcurv/ore.hpp"
#include "pcurv/sieve.hpp"
#include "pcurv/truncmat.hpp"

namespace pcurv {

// Accumulating remainder tree.  Computes the ordered matrix factorials
//
//     M(t) M(t+1) ... M(t+p-1)   mod (p, t^e)
//
// for every admissible prime p < N simultaneously.  The index sets
// U_{i,j} = { k | j N/2^i < k <= (j+1) N/2^i } partition {1, ..., N} at
// every level 0 <= i <= eta = ceil(log2 N); at level eta each U is empty
// or a singleton.  Three aligned binary trees are filled:
//
//   T_{i,j} = prod of M(t+k) for k in U_{i,j}, ascending-k, over Z[t]/t^e
//   S_{i,j} = prod of the admissible primes in U_{i,j}
//   W_{i,j} = T_{i,0} T_{i,1} ... T_{i,j-1} mod S_{i,j}
//
// T and S are built bottom-up (binary splitting with the intermediate
// products kept); W is built top-down from W_{0,0} = I via
//
//   W_{i+1,2j}   = W_{i,j} mod S_{i+1,2j}
//   W_{i+1,2j+1} = W_{i,j} T_{i+1,2j} mod S_{i+1,2j+1}.
//
// A leaf with S = p then holds M(t+1)...M(t+p-1) mod (p, t^e); the final
// left multiplication by M(t) happens per prime.  Empty index sets give
// identity leaves, which are flagged and skipped in products; subtrees
// whose S is 1 contain no admissible prime and are pruned from the
// descent.  T levels are released as soon as the descent has consumed
// them.  All arithmetic is exact, so parallel section order cannot change
// any result.

struct TreeNode {
  TruncPolyMat mat;
  bool identity = false;
};

struct FactorialTrees {
  std::uint64_t N = 0;
  unsigned eta = 0;
  unsigned e = 0;
  unsigned s = 0;
  // level i holds 2^i nodes; t_levels[i][j] ~ T_{i,j}, s_levels[i][j] ~ S_{i,j}
  std::vector<std::vector<TreeNode>> t_levels;
  std::vector<std::vector<BigInt>> s_levels;

  // {lo, hi} with U_{i,j} = {lo+1, ..., hi}, evaluated with integer floors
  static std::pair<std::uint64_t, std::uint64_t> interval(std::uint64_t N,
                                                          unsigned i,
                                                          std::uint64_t j);
};

struct PrefixLeaf {
  std::uint64_t p;
  TruncPolyMat w;  // M(t+1)...M(t+p-1) mod (p, t^e)
};

struct PrimeFactorial {
  std::uint64_t p;
  TruncPolyMat value;  // M(t)...M(t+p-1) mod (p, t^e)
};

struct TreeTimings {
  double leaves_s = 0;
  double products_s = 0;
  double descent_s = 0;
};

struct TreeNodeStat {
  unsigned level;
  std::uint64_t index;
  std::size_t max_bits;
};

// Fills the leaf level of T and S only.
FactorialTrees build_leaves(const CompanionMat& m, std::uint64_t N, unsigned e,
                            const PrimePlan& plan, unsigned jobs = 1);

// Fills all internal levels bottom-up (ascending-k product order).
void build_product_trees(FactorialTrees& trees, unsigned jobs = 1);

// Top-down prefix descent; consumes the T levels and returns the W leaves
// for the admissible primes, ascending.
std::vector<PrefixLeaf> descend_remainders(FactorialTrees&& trees,
                                           unsigned jobs = 1);

// The full engine: leaves, product trees, descent, then the left
// multiplication by M(t) for each admissible prime.  e >= 1.  The product
// phase here builds the large top levels in the residue ring modulo the
// product of the primes beyond each node's interval (the only places the
// node's value ever flows), which caps node sizes near |S| instead of
// letting them grow with the subtree; the root and right spine, which no
// prefix ever consumes, are skipped outright.
std::vector<PrimeFactorial> matrix_factorial(const CompanionMat& m,
                                             std::uint64_t N, unsigned e,
                                             const PrimePlan& plan,
                                             unsigned jobs = 1,
                                             TreeTimings* timings = nullptr,
                                             std::vector<TreeNodeStat>* stats = nullptr);

std::vector<TreeNodeStat> collect_node_stats(const FactorialTrees& trees);
void write_node_stats_csv(std::ostream& os, const std::vector<TreeNodeStat>& stats);

}  // namespace pcurv

#endif
