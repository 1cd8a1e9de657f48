#pragma once

// Constructive machinery: the k-partite design G_{N,k,r} realized as the
// kernel of a power-row matrix over Z_N, greedy covering systems, the
// patch family B, and the composition H -> H_N.

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lotteryforge/common.hpp"
#include "lotteryforge/modular.hpp"
#include "lotteryforge/partite_layout.hpp"
#include "lotteryforge/set_system.hpp"
#include "lotteryforge/verify.hpp"

namespace lotteryforge {

// Audit record of one composition run. A- and B-side sizes are reported
// separately together with the deduplication overlap, so the identity
// size_A + size_B = |H_N| + overlap stays checkable from the report alone.
struct CompositionReport {
  int m = 0;
  int N = 0;
  int k = 0;
  int r = 0;
  int p = 0;
  std::uint64_t size_A = 0;
  std::uint64_t size_B = 0;
  std::uint64_t overlap = 0;
  std::uint64_t total = 0;

  struct CoveringSize {
    int v;
    int k_prime;
    std::uint64_t size;
  };
  std::vector<CoveringSize> covering_sizes;

  rational density;  // |H_N| / C(mN, r)
};

// Modulus M with the guarantee that N ≡ 1 (mod M) makes every relevant
// Vandermonde submatrix invertible over Z_N. Trivial when r = k (the
// constraint matrix is empty).
inline bigint gdd_required_modulus(int k, int r) {
  if (k < 2 || r < 1 || r > k)
    throw parameter_error("gdd_required_modulus: need k >= 2 and 1 <= r <= k");
  if (r == k) return 1;
  return m_lcm(k, k - r);
}

// The k-partite design on k*N vertices (layout vertex (j,z) = j*N+z) whose
// blocks are the transversals z with A z ≡ 0 mod N, A the (k-r) x k power
// matrix [j^i]. Any r vertices from r distinct parts lie in exactly one
// block; there are exactly N^r blocks.
inline SetSystem gdd(int N, int k, int r) {
  if (k < 2 || r < 1 || r > k)
    throw parameter_error("gdd: need k >= 2 and 1 <= r <= k");
  if (N < 1) throw parameter_error("gdd: need N >= 1");

  std::vector<Block> blocks;
  Block block(k);

  if (r == k) {
    // Empty constraint matrix: every transversal is a block.
    std::vector<int> z(k, 0);
    for (;;) {
      for (int j = 0; j < k; ++j) block[j] = j * N + z[j];
      blocks.push_back(block);
      int i = k - 1;
      while (i >= 0 && z[i] == N - 1) z[i--] = 0;
      if (i < 0) break;
      ++z[i];
    }
    return SetSystem(k * N, k, std::move(blocks));
  }

  if (N < 2) throw precondition_error("gdd: need N >= 2 when r < k");
  const bigint required = gdd_required_modulus(k, r);
  if ((bigint(N) - 1) % required != 0)
    throw precondition_error("gdd: requires N ≡ 1 (mod " + required.str() + ")");

  const ZModMatrix A = power_matrix(k, k - r, N);
  // Solved submatrix: columns r..k-1 of A, a Vandermonde matrix on nodes
  // r..k-1, invertible by the congruence on N.
  ZModMatrix solve_part(k - r, k - r, N);
  for (int i = 0; i < k - r; ++i)
    for (int j = 0; j < k - r; ++j) solve_part.at(i, j) = A.at(i, r + j);

  std::vector<int> z(r, 0);
  std::vector<long long> rhs(k - r);
  for (;;) {
    for (int i = 0; i < k - r; ++i) {
      unsigned __int128 acc = 0;
      for (int j = 0; j < r; ++j)
        acc += static_cast<unsigned __int128>(A.at(i, j)) * static_cast<unsigned>(z[j]);
      const long long s = static_cast<long long>(acc % static_cast<unsigned long long>(N));
      rhs[i] = (N - s) % N;
    }
    std::vector<long long> tail;
    try {
      tail = solve_unit_system(solve_part, rhs);
    } catch (const nonunit_error&) {
      // Impossible under the congruence precondition.
      throw std::logic_error("gdd: Vandermonde submatrix not invertible despite congruence");
    }
    for (int j = 0; j < r; ++j) block[j] = j * N + z[j];
    for (int j = r; j < k; ++j) block[j] = j * N + static_cast<int>(tail[j - r]);
    blocks.push_back(block);

    int i = r - 1;
    while (i >= 0 && z[i] == N - 1) z[i--] = 0;
    if (i < 0) break;
    ++z[i];
  }
  SetSystem out(k * N, k, std::move(blocks));
  std::uint64_t expected = 1;
  for (int i = 0; i < r; ++i) expected *= static_cast<std::uint64_t>(N);
  if (out.size() != expected)
    throw std::logic_error("gdd: block count differs from N^r");
  return out;
}

// Greedy covering system: repeatedly add the lexicographically least block
// among those covering the maximum number of still-uncovered r-subsets.
// The result is validated before returning.
inline SetSystem greedy_covering(int n, int k, int r) {
  if (!(1 <= r && r <= k && k <= n))
    throw parameter_error("greedy_covering: need 1 <= r <= k <= n");

  const std::uint64_t total = choose(n, r);
  std::vector<char> covered(total, 0);
  std::uint64_t remaining = total;

  std::vector<Block> out;
  std::vector<int> idx;
  Block sub(r);
  while (remaining > 0) {
    Block best;
    std::uint64_t best_gain = 0;
    std::vector<int> cand;
    first_subset(cand, n, k);
    do {
      std::uint64_t gain = 0;
      first_subset(idx, k, r);
      do {
        for (int i = 0; i < r; ++i) sub[i] = cand[idx[i]];
        if (!covered[subset_rank(sub, n)]) ++gain;
      } while (next_subset(idx, k));
      if (gain > best_gain) {
        best_gain = gain;
        best = cand;
      }
    } while (next_subset(cand, n));

    first_subset(idx, k, r);
    do {
      for (int i = 0; i < r; ++i) sub[i] = best[idx[i]];
      const std::uint64_t rank = subset_rank(sub, n);
      if (!covered[rank]) {
        covered[rank] = 1;
        --remaining;
      }
    } while (next_subset(idx, k));
    out.push_back(std::move(best));
  }

  SetSystem sys(n, k, std::move(out));
  if (!verify_covering(sys, r).ok)
    throw std::logic_error("greedy_covering: produced an invalid covering");
  return sys;
}

// Patch family B: union over base vertices v and k' in [k-r+2, k] of all
// k-subsets A of [0,mN) such that A ∩ X_v is a block of an (N,k',k'-Δ)
// covering placed on X_v = [vN, vN+N) and the rest of A projects to at
// most r-2 base vertices. Empty at r = 1, where the k' range is empty.
inline SetSystem patches(int m, int N, int k, int r,
                         std::vector<CompositionReport::CoveringSize>* covering_sizes = nullptr) {
  if (m < 1) throw parameter_error("patches: need m >= 1");
  if (!(1 <= r && r <= k)) throw parameter_error("patches: need 1 <= r <= k");
  if (N < k)
    throw precondition_error("patches: need N >= k so the per-part coverings exist");

  const int delta = k - r;
  const int n_total = m * N;
  std::vector<Block> out;

  for (int k_prime = delta + 2; k_prime <= k; ++k_prime) {
    const SetSystem covering = greedy_covering(N, k_prime, k_prime - delta);
    for (int v = 0; v < m; ++v) {
      if (covering_sizes != nullptr)
        covering_sizes->push_back({v, k_prime, covering.size()});
      const int lo = v * N, hi = (v + 1) * N;
      for (const Block& c : covering.blocks()) {
        Block base;
        base.reserve(k);
        for (int u : c) base.push_back(lo + u);

        // Extend with k-k' vertices outside X_v spanning at most r-2
        // distinct parts; depth-first with pruning on the part count.
        std::vector<int> parts_seen;
        std::function<void(int, Block&)> extend = [&](int from, Block& acc) {
          if (static_cast<int>(acc.size()) == k) {
            Block b = acc;
            std::sort(b.begin(), b.end());
            out.push_back(std::move(b));
            return;
          }
          for (int u = from; u < n_total; ++u) {
            if (u >= lo && u < hi) continue;
            const int part = u / N;
            const bool known =
                std::find(parts_seen.begin(), parts_seen.end(), part) != parts_seen.end();
            if (!known && static_cast<int>(parts_seen.size()) >= r - 2) continue;
            if (!known) parts_seen.push_back(part);
            acc.push_back(u);
            extend(u + 1, acc);
            acc.pop_back();
            if (!known) parts_seen.pop_back();
          }
        };
        extend(0, base);
      }
    }
  }
  return SetSystem(n_total, k, std::move(out));
}

// Composition: embed a copy of gdd(N,k,r) over each block of
// H (part j of the design goes to the j-th smallest vertex of the block),
// union the patch family, and verify the result at (mN,k,r,p).
inline std::pair<SetSystem, CompositionReport> compose(const SetSystem& H,
                                                       const Params& params, int N) {
  if (H.n() != params.n || H.k() != params.k)
    throw parameter_error("compose: H does not match params");
  const int m = params.n, k = params.k, r = params.r, p = params.p;

  const Verdict base_check = verify_lottery(H, params);
  if (!base_check.ok)
    throw precondition_error("compose: H is not an (m,k,r,p)-lottery system");
  if (N < k) throw precondition_error("compose: need N >= k");
  const bigint required = gdd_required_modulus(k, r);
  if ((bigint(N) - 1) % required != 0)
    throw precondition_error("compose: requires N ≡ 1 (mod " + required.str() + ")");
  if (r == 1) {
    // K_p^1 is not pair-covering for p > 1, and blow-ups do not preserve
    // its absence: the composed system covers exactly the clones of
    // covered base vertices, so it verifies iff N * uncovered < p.
    const int uncovered = m - static_cast<int>(H.covered_vertices().size());
    if (static_cast<long long>(N) * uncovered >= p)
      throw precondition_error(
          "compose: at r = 1 the clones of uncovered base vertices form an "
          "unmet p-set (need N * uncovered < p)");
  }

  const SetSystem design = gdd(N, k, r);

  std::vector<Block> a_blocks;
  a_blocks.reserve(H.size() * design.size());
  Block img(k);
  for (const Block& e : H.blocks()) {
    for (const Block& g : design.blocks()) {
      for (int j = 0; j < k; ++j) img[j] = e[g[j] / N] * N + g[j] % N;
      std::sort(img.begin(), img.end());
      a_blocks.push_back(img);
    }
  }
  const SetSystem A(m * N, k, std::move(a_blocks));

  CompositionReport report;
  report.m = m;
  report.N = N;
  report.k = k;
  report.r = r;
  report.p = p;

  const SetSystem B = patches(m, N, k, r, &report.covering_sizes);

  std::uint64_t expected_a = H.size();
  for (int i = 0; i < r; ++i) expected_a *= static_cast<std::uint64_t>(N);
  if (A.size() != expected_a)
    throw std::logic_error("compose: |A| differs from N^r * |H|");

  std::vector<Block> all = A.blocks();
  all.insert(all.end(), B.blocks().begin(), B.blocks().end());
  SetSystem composed(m * N, k, std::move(all));

  report.size_A = A.size();
  report.size_B = B.size();
  report.total = composed.size();
  report.overlap = A.size() + B.size() - composed.size();
  report.density = rational(bigint(composed.size()), choose_big(m * N, r));

  const Verdict check = verify_lottery(composed, Params(m * N, k, r, p));
  if (!check.ok)
    throw std::logic_error("compose: output failed lottery verification");
  return {std::move(composed), std::move(report)};
}

}  // namespace lotteryforge
