#pragma once

// Exact and heuristic minimization of lottery, covering, and Turán sizes
// at desk scale, plus the exact-rational bounds and limit-density
// reference values used in reports.
//
// The exact search is iterative deepening on system size with
// deterministic node order: at each node the lexicographically least
// unsatisfied p-set is selected and candidate blocks meeting it in at
// least r vertices are tried in lexicographic order. Sizes below the
// returned optimum are therefore proven infeasible by exhaustion.

#include <bit>
#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lotteryforge/common.hpp"
#include "lotteryforge/set_system.hpp"
#include "lotteryforge/verify.hpp"

namespace lotteryforge {

struct SearchBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0;       // 0 = unlimited
};

// Bracket on an optimum. When complete, lower == upper and the certificate
// is a minimum system; otherwise the certificate is the best system found
// and lower is the largest size proven infeasible plus one.
struct BoundPair {
  rational lower;
  std::uint64_t upper = 0;
  SetSystem certificate;
  std::string lower_method;
  std::string upper_method;
  bool complete = false;
  std::uint64_t nodes = 0;
};

namespace detail {

inline std::uint64_t bit_mask(const std::vector<int>& s) {
  std::uint64_t m = 0;
  for (int v : s) m |= std::uint64_t{1} << v;
  return m;
}

inline Block block_of_mask(std::uint64_t m) {
  Block b;
  while (m != 0) {
    b.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return b;
}

inline std::vector<std::uint64_t> all_subset_masks(int n, int size) {
  std::vector<std::uint64_t> out;
  std::vector<int> s;
  if (!first_subset(s, n, size)) return out;
  out.reserve(choose(n, size));
  do {
    out.push_back(bit_mask(s));
  } while (next_subset(s, n));
  return out;
}

// Largest number of p-sets a single block can satisfy; valid for the
// counting lower bound ceil(|unsatisfied| / per_block).
inline std::uint64_t max_psets_per_block(int n, int k, int r, int p) {
  std::uint64_t acc = 0;
  for (int j = r; j <= std::min(k, p); ++j)
    acc += choose(k, j) * choose(n - k, p - j);
  return acc;
}

struct LotterySearch {
  const std::vector<std::uint64_t>& psets;
  const std::vector<std::uint64_t>& cands;
  const std::vector<std::vector<int>>& covers;  // candidate ids per p-set
  int r;
  std::uint64_t per_block;
  std::uint64_t node_limit;  // 0 = unlimited
  std::chrono::steady_clock::time_point deadline;
  bool use_deadline = false;

  std::uint64_t nodes = 0;
  bool aborted = false;
  std::vector<int> chosen;
  std::vector<int> solution;

  bool dfs(const std::vector<int>& unsatisfied, std::uint64_t s) {
    ++nodes;
    if (node_limit != 0 && nodes > node_limit) {
      aborted = true;
      return false;
    }
    if (use_deadline && (nodes & 1023) == 0 &&
        std::chrono::steady_clock::now() > deadline) {
      aborted = true;
      return false;
    }
    if (unsatisfied.empty()) {
      solution = chosen;
      return true;
    }
    const std::uint64_t remaining = s - chosen.size();
    if (remaining == 0) return false;
    if (unsatisfied.size() > remaining * per_block) return false;

    const int target = unsatisfied.front();  // lex-least unsatisfied p-set
    std::vector<int> next;
    next.reserve(unsatisfied.size());
    for (int ci : covers[target]) {
      bool dup = false;
      for (int c : chosen)
        if (c == ci) {
          dup = true;
          break;
        }
      if (dup) continue;
      const std::uint64_t K = cands[ci];
      next.clear();
      for (int pi : unsatisfied)
        if (std::popcount(K & psets[pi]) < r) next.push_back(pi);
      chosen.push_back(ci);
      if (dfs(next, s)) return true;
      chosen.pop_back();
      if (aborted) return false;
    }
    return false;
  }
};

}  // namespace detail

// Greedy upper-bound generator: repeatedly add the lexicographically least
// block satisfying the most still-unsatisfied p-sets. The output is
// verified before returning.
inline SetSystem greedy_lottery(const Params& params) {
  const int n = params.n, k = params.k, r = params.r, p = params.p;
  if (n > 62) throw capacity_error("greedy_lottery: n above 62-vertex limit");
  if (p > n) return SetSystem(n, k);

  const std::vector<std::uint64_t> psets = detail::all_subset_masks(n, p);
  const std::vector<std::uint64_t> cands = detail::all_subset_masks(n, k);
  std::vector<char> satisfied(psets.size(), 0);
  std::size_t remaining = psets.size();

  std::vector<Block> out;
  while (remaining > 0) {
    std::size_t best = 0;
    std::uint64_t best_gain = 0;
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      std::uint64_t gain = 0;
      for (std::size_t pi = 0; pi < psets.size(); ++pi)
        if (!satisfied[pi] && std::popcount(cands[ci] & psets[pi]) >= r) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = ci;
      }
    }
    if (best_gain == 0)
      throw std::logic_error("greedy_lottery: no block makes progress");
    for (std::size_t pi = 0; pi < psets.size(); ++pi)
      if (!satisfied[pi] && std::popcount(cands[best] & psets[pi]) >= r) {
        satisfied[pi] = 1;
        --remaining;
      }
    out.push_back(detail::block_of_mask(cands[best]));
  }

  SetSystem sys(n, k, std::move(out));
  if (!verify_lottery(sys, params).ok)
    throw std::logic_error("greedy_lottery: produced an invalid system");
  return sys;
}

// Exact L(n,k,r,p) by branch and bound within the given budget. The
// optional symmetry switch fixes the first chosen block to {0,...,k-1}
// (sound up to relabeling); it changes which minimum certificate is
// found, never the value, and is off by default.
inline BoundPair exact_min_lottery(const Params& params,
                                   const SearchBudget& budget = {},
                                   bool symmetry_break = false) {
  const int n = params.n, k = params.k, r = params.r, p = params.p;
  if (n > 62) throw capacity_error("exact_min_lottery: n above 62-vertex limit");
  if (p > n)
    return {rational(0), 0, SetSystem(n, k), "vacuous", "vacuous", true, 0};

  const std::vector<std::uint64_t> psets = detail::all_subset_masks(n, p);
  const std::vector<std::uint64_t> cands = detail::all_subset_masks(n, k);
  const std::uint64_t per_block = detail::max_psets_per_block(n, k, r, p);

  SetSystem greedy = greedy_lottery(params);
  const std::uint64_t ub = greedy.size();
  const std::uint64_t lb = (psets.size() + per_block - 1) / per_block;

  std::vector<std::vector<int>> covers(psets.size());
  for (std::size_t pi = 0; pi < psets.size(); ++pi)
    for (std::size_t ci = 0; ci < cands.size(); ++ci)
      if (std::popcount(cands[ci] & psets[pi]) >= r)
        covers[pi].push_back(static_cast<int>(ci));

  const auto start = std::chrono::steady_clock::now();
  std::uint64_t total_nodes = 0;

  for (std::uint64_t s = lb; s < ub; ++s) {
    detail::LotterySearch search{psets, cands, covers, r, per_block,
                                 budget.max_nodes, start, false, 0, false,
                                 {}, {}};
    if (budget.max_nodes != 0 && total_nodes >= budget.max_nodes) {
      return {rational(bigint(s)), ub, std::move(greedy),
              s == lb ? "counting-bound" : "search-exhaustion", "greedy",
              false, total_nodes};
    }
    if (budget.max_nodes != 0) search.node_limit = budget.max_nodes - total_nodes;
    if (budget.max_seconds > 0) {
      search.use_deadline = true;
      search.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(budget.max_seconds));
    }

    std::vector<int> unsatisfied(psets.size());
    std::iota(unsatisfied.begin(), unsatisfied.end(), 0);
    bool found = false;
    if (symmetry_break) {
      // Candidate 0 is {0,...,k-1}; it meets the root p-set {0,...,p-1}
      // in min(k,p) >= r vertices.
      search.chosen.push_back(0);
      std::vector<int> rest;
      for (int pi : unsatisfied)
        if (std::popcount(cands[0] & psets[pi]) < r) rest.push_back(pi);
      found = search.dfs(rest, s);
    } else {
      found = search.dfs(unsatisfied, s);
    }
    total_nodes += search.nodes;

    if (search.aborted) {
      return {rational(bigint(s)), ub, std::move(greedy),
              s == lb ? "counting-bound" : "search-exhaustion", "greedy",
              false, total_nodes};
    }
    if (found) {
      std::vector<Block> blocks;
      blocks.reserve(search.solution.size());
      for (int ci : search.solution) blocks.push_back(detail::block_of_mask(cands[ci]));
      SetSystem cert(n, k, std::move(blocks));
      return {rational(bigint(s)), s, std::move(cert),
              s == lb ? "counting-bound" : "search-exhaustion",
              "branch-and-bound", true, total_nodes};
    }
  }

  // Every size below the greedy system is exhausted: greedy is optimal.
  return {rational(bigint(ub)), ub, std::move(greedy),
          ub == lb ? "counting-bound" : "search-exhaustion", "greedy", true,
          total_nodes};
}

// T(n,p,r) = L(n,r,r,p).
inline BoundPair exact_turan(int n, int p, int r, const SearchBudget& budget = {},
                             bool symmetry_break = false) {
  return exact_min_lottery(Params(n, r, r, p), budget, symmetry_break);
}

// Shadow-counting bound: L(n,k,r,p) >= T(n,p,r) / C(k,r), exact rational.
// n and p name the instance the T value belongs to.
inline rational turan_lower_bound(int n, int k, int r, int p,
                                  std::uint64_t turan_value) {
  (void)n;
  (void)p;
  if (r < 1 || r > k) throw parameter_error("turan_lower_bound: need 1 <= r <= k");
  return rational(bigint(turan_value), bigint(choose(k, r)));
}

// Known limit of L(n,k,2,p) / C(n,2): 1 / ((p-1) C(k,2)).
inline rational limit_density_r2(int k, int p) {
  if (k < 2 || p < 2) throw parameter_error("limit_density_r2: need k, p >= 2");
  return rational(1, bigint(p - 1) * choose_big(k, 2));
}

// Limit of C(n,k,r) / C(n,r): 1 / C(k,r); the reference line for covering
// density reports.
inline rational covering_limit_density(int k, int r) {
  if (r < 1 || r > k)
    throw parameter_error("covering_limit_density: need 1 <= r <= k");
  return rational(1, choose_big(k, r));
}

// Per-instance density row: exact-rational bounds, the best system found,
// and the applicable reference limit (marked when conjectural).
struct DensityReport {
  Params params;
  rational turan_bound;        // T-side bound / C(k,r)
  std::string turan_bound_source;    // "exact" or "lower-bound"
  rational lower;            // best proven lower bound on L
  std::uint64_t upper = 0;   // best system size found
  std::optional<std::uint64_t> exact;
  rational density;          // upper / C(n,r)
  std::optional<rational> reference_limit;
  bool reference_conjectural = false;
};

inline DensityReport density_report(const Params& params,
                                    const SearchBudget& budget = {}) {
  const int n = params.n, k = params.k, r = params.r, p = params.p;

  BoundPair turan = exact_turan(n, p, r, budget);
  // The Turán side's lower bound is always an integer count.
  const bigint t_value =
      turan.complete ? bigint(turan.upper) : numerator(turan.lower);
  DensityReport rep{params,
                    rational(t_value, choose_big(k, r)),
                    turan.complete ? "exact" : "lower-bound",
                    rational(0),
                    0,
                    std::nullopt,
                    rational(0),
                    std::nullopt,
                    false};

  BoundPair lottery = exact_min_lottery(params, budget);
  rep.upper = lottery.upper;
  if (lottery.complete) rep.exact = lottery.upper;
  rep.lower = std::max(rep.turan_bound, lottery.lower);
  rep.density = rational(bigint(lottery.upper), choose_big(n, r));

  if (r == 2) {
    rep.reference_limit = limit_density_r2(k, p);
  } else if (p == r) {
    rep.reference_limit = covering_limit_density(k, r);
  } else if (k == 4 && r == 3) {
    rep.reference_limit = rational(1, bigint(p - 1) * (p - 1));
    rep.reference_conjectural = true;
  } else if (k == 3 && r == 3) {
    // Turán's conjecture t(p,3) = 4/(p-1)^2; display-only.
    rep.reference_limit = rational(4, bigint(p - 1) * (p - 1));
    rep.reference_conjectural = true;
  }
  return rep;
}

}  // namespace lotteryforge
