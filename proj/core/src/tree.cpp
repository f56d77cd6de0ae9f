#include "pcurv/tree.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include "pcurv/errors.hpp"
#include "pcurv/util.hpp"

namespace pcurv {

namespace {

unsigned ceil_log2_u64(std::uint64_t n) {
  unsigned b = 0;
  while ((std::uint64_t{1} << b) < n) ++b;
  return b;
}

TruncPolyMat instantiate(const CompanionMat& m, std::uint64_t k, unsigned e) {
  TruncPolyMat out(m.s, e);
  const BigInt a = static_cast<unsigned long>(k);
  for (unsigned i = 0; i < m.s; ++i) {
    for (unsigned j = 0; j < m.s; ++j) {
      const IntPoly& q = m.at(i, j);
      if (q.is_zero()) continue;
      out.set(i, j, TruncPoly::from_intpoly(theta_shift_arg(q, a), e));
    }
  }
  return out;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> FactorialTrees::interval(
    std::uint64_t N, unsigned i, std::uint64_t j) {
  // U_{i,j} = { k | j N / 2^i < k <= (j+1) N / 2^i }
  const std::uint64_t lo = (j * N) >> i;
  const std::uint64_t hi = ((j + 1) * N) >> i;
  return {lo, hi};
}

FactorialTrees build_leaves(const CompanionMat& m, std::uint64_t N, unsigned e,
                            const PrimePlan& plan, unsigned jobs) {
  if (e < 1) throw ContractError("matrix_factorial: e must be >= 1");
  if (N < 2) throw ContractError("matrix_factorial: N must be >= 2");

  FactorialTrees trees;
  trees.N = N;
  trees.eta = ceil_log2_u64(N);
  trees.e = e;
  trees.s = m.s;
  trees.t_levels.resize(trees.eta + 1);
  trees.s_levels.resize(trees.eta + 1);

  const std::uint64_t width = std::uint64_t{1} << trees.eta;
  auto& tleaf = trees.t_levels[trees.eta];
  auto& sleaf = trees.s_levels[trees.eta];
  tleaf.assign(width, TreeNode{TruncPolyMat::identity(m.s, e), true});
  sleaf.assign(width, BigInt(1));

  parallel_for(width, jobs, [&](std::size_t j) {
    const auto [lo, hi] = FactorialTrees::interval(N, trees.eta, j);
    if (hi <= lo) return;  // empty: identity leaf, S = 1
    const std::uint64_t k = hi;
    tleaf[j] = TreeNode{instantiate(m, k, e), false};
    if (std::binary_search(plan.admissible.begin(), plan.admissible.end(), k)) {
      sleaf[j] = static_cast<unsigned long>(k);
    }
  });
  return trees;
}

void build_product_trees(FactorialTrees& trees, unsigned jobs) {
  for (unsigned i = trees.eta; i-- > 0;) {
    const std::uint64_t width = std::uint64_t{1} << i;
    auto& dst = trees.t_levels[i];
    auto& src = trees.t_levels[i + 1];
    dst.assign(width, TreeNode{TruncPolyMat::identity(trees.s, trees.e), true});
    parallel_for(width, jobs, [&](std::size_t j) {
      const TreeNode& left = src[2 * j];
      const TreeNode& right = src[2 * j + 1];
      if (left.identity && right.identity) return;
      if (left.identity) {
        dst[j] = right;
      } else if (right.identity) {
        dst[j] = left;
      } else {
        dst[j] = TreeNode{mat_mul(left.mat, right.mat), false};
      }
    });
    auto& sdst = trees.s_levels[i];
    const auto& ssrc = trees.s_levels[i + 1];
    sdst.resize(width);
    for (std::uint64_t j = 0; j < width; ++j) {
      sdst[j] = ssrc[2 * j] * ssrc[2 * j + 1];
    }
  }
}

namespace {

// A T node only ever feeds prefix products taken modulo primes beyond its
// own interval, so its value is needed mod need(i,j) = prod_{j' > j} S_{i,j'}
// only.  Near the root that cap is far smaller than the plain integer
// product, so the expensive top levels are built in the capped residue ring
// instead of over Z.  Below kCapHeight the plain build is cheaper.
constexpr unsigned kCapHeight = 9;    // cap when the subtree has >= 2^9 leaves
constexpr std::uint64_t kCapMaxWidth = 256;  // suffix tables stay small

void build_product_trees_capped(FactorialTrees& trees, unsigned jobs) {
  for (unsigned i = trees.eta; i-- > 0;) {
    const std::uint64_t width = std::uint64_t{1} << i;
    auto& sdst = trees.s_levels[i];
    const auto& ssrc = trees.s_levels[i + 1];
    sdst.resize(width);
    for (std::uint64_t j = 0; j < width; ++j) {
      sdst[j] = ssrc[2 * j] * ssrc[2 * j + 1];
    }

    const bool cap_level = width <= kCapMaxWidth && trees.eta - i >= kCapHeight;
    std::vector<BigInt> suffix;
    if (cap_level) {
      suffix.assign(width + 1, BigInt(1));
      for (std::uint64_t j = width; j-- > 0;) {
        suffix[j] = suffix[j + 1] * sdst[j];
      }
    }
    auto& dst = trees.t_levels[i];
    auto& src = trees.t_levels[i + 1];
    dst.assign(width, TreeNode{TruncPolyMat::identity(trees.s, trees.e), true});
    parallel_for(width, jobs, [&](std::size_t j) {
      if (j == width - 1) return;  // root / right spine, never consumed
      if (cap_level && suffix[j + 1] == 1) return;
      const TreeNode& left = src[2 * j];
      const TreeNode& right = src[2 * j + 1];
      if (left.identity && right.identity) return;
      // Cap only once the plain product would outgrow the cap: reducing
      // early turns small signed values into cap-sized residues.
      bool use_cap = false;
      if (cap_level) {
        const bool child_capped = left.mat.modulus().has_value() ||
                                  right.mat.modulus().has_value();
        const std::size_t est =
            left.mat.max_bit_size() + right.mat.max_bit_size() + 16;
        use_cap = child_capped || est > bit_size(suffix[j + 1]);
      }
      if (use_cap) {
        const Modulus cap(suffix[j + 1]);
        if (left.identity) {
          dst[j] = TreeNode{mat_reduce(right.mat, cap), false};
        } else if (right.identity) {
          dst[j] = TreeNode{mat_reduce(left.mat, cap), false};
        } else {
          dst[j] = TreeNode{
              mat_mul(mat_reduce(left.mat, cap), mat_reduce(right.mat, cap)),
              false};
        }
      } else if (left.identity) {
        dst[j] = right;
      } else if (right.identity) {
        dst[j] = left;
      } else {
        dst[j] = TreeNode{mat_mul(left.mat, right.mat), false};
      }
    });
  }
}

}  // namespace

std::vector<PrefixLeaf> descend_remainders(FactorialTrees&& trees, unsigned jobs) {
  std::vector<PrefixLeaf> out;
  if (trees.s_levels.empty() || trees.s_levels[0].empty()) return out;
  if (trees.s_levels[0][0] == 1) return out;  // no admissible prime at all

  // only even-index T nodes are consumed below; drop the odd ones now
  for (unsigned i = 1; i <= trees.eta; ++i) {
    auto& level = trees.t_levels[i];
    for (std::uint64_t j = 1; j < level.size(); j += 2) {
      level[j] = TreeNode{TruncPolyMat::identity(trees.s, trees.e), true};
    }
  }

  std::vector<std::optional<TruncPolyMat>> cur(1);
  cur[0] = TruncPolyMat::identity(trees.s, trees.e, Modulus(trees.s_levels[0][0]));

  for (unsigned i = 0; i < trees.eta; ++i) {
    const auto& schild = trees.s_levels[i + 1];
    auto& tchild = trees.t_levels[i + 1];
    std::vector<std::optional<TruncPolyMat>> next(schild.size());
    parallel_for(cur.size(), jobs, [&](std::size_t j) {
      if (!cur[j].has_value()) return;
      const TruncPolyMat& w = *cur[j];
      if (schild[2 * j] != 1) {
        next[2 * j] = mat_reduce(w, Modulus(schild[2 * j]));
      }
      if (schild[2 * j + 1] != 1) {
        const Modulus m(schild[2 * j + 1]);
        const TreeNode& t = tchild[2 * j];
        if (t.identity) {
          next[2 * j + 1] = mat_reduce(w, m);
        } else {
          // reduce both factors first so the product stays small
          next[2 * j + 1] = mat_mul(mat_reduce(w, m), mat_reduce(t.mat, m));
        }
      }
    });
    cur = std::move(next);
    // this T level has been consumed
    tchild.clear();
    tchild.shrink_to_fit();
    trees.t_levels[i].clear();
    trees.t_levels[i].shrink_to_fit();
  }

  const auto& sleaf = trees.s_levels[trees.eta];
  for (std::uint64_t j = 0; j < sleaf.size(); ++j) {
    if (sleaf[j] != 1 && cur[j].has_value()) {
      out.push_back(PrefixLeaf{to_u64(sleaf[j]), std::move(*cur[j])});
    }
  }
  return out;
}

std::vector<PrimeFactorial> matrix_factorial(const CompanionMat& m,
                                             std::uint64_t N, unsigned e,
                                             const PrimePlan& plan,
                                             unsigned jobs,
                                             TreeTimings* timings,
                                             std::vector<TreeNodeStat>* stats) {
  StopWatch total;
  FactorialTrees trees = build_leaves(m, N, e, plan, jobs);
  const double t_leaves = total.seconds();
  build_product_trees_capped(trees, jobs);
  const double t_products = total.seconds();
  if (stats) *stats = collect_node_stats(trees);
  std::vector<PrefixLeaf> leaves = descend_remainders(std::move(trees), jobs);
  const double t_descent = total.seconds();
  if (timings) {
    timings->leaves_s = t_leaves;
    timings->products_s = t_products - t_leaves;
    timings->descent_s = t_descent - t_products;
  }

  const TruncPolyMat m0 = instantiate(m, 0, e);
  std::vector<PrimeFactorial> out;
  out.reserve(leaves.size());
  for (const auto& leaf : leaves) out.push_back(PrimeFactorial{leaf.p, leaf.w});
  parallel_for(leaves.size(), jobs, [&](std::size_t idx) {
    const Modulus mod(BigInt(static_cast<unsigned long>(out[idx].p)));
    out[idx].value = mat_mul(mat_reduce(m0, mod), leaves[idx].w);
  });
  return out;
}

std::vector<TreeNodeStat> collect_node_stats(const FactorialTrees& trees) {
  std::vector<TreeNodeStat> stats;
  for (unsigned i = 0; i < trees.t_levels.size(); ++i) {
    for (std::uint64_t j = 0; j < trees.t_levels[i].size(); ++j) {
      stats.push_back(TreeNodeStat{i, j, trees.t_levels[i][j].mat.max_bit_size()});
    }
  }
  return stats;
}

void write_node_stats_csv(std::ostream& os, const std::vector<TreeNodeStat>& stats) {
  os << "level,index,max_bits\n";
  for (const auto& st : stats) {
    os << st.level << "," << st.index << "," << st.max_bits << "\n";
  }
}

}  // namespace pcurv
