#pragma once

// Independent property checkers. Every verdict either passes or carries a
// re-checkable witness: the lexicographically least failing vertex subset,
// so failures are deterministic across runs and platforms.

#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lotteryforge/common.hpp"
#include "lotteryforge/partite_layout.hpp"
#include "lotteryforge/set_system.hpp"

namespace lotteryforge {

struct Verdict {
  bool ok = true;
  std::optional<std::vector<int>> witness;
  std::string detail;

  static Verdict pass() { return {}; }
  static Verdict fail(std::vector<int> w, std::string tag) {
    return {false, std::move(w), std::move(tag)};
  }
  explicit operator bool() const { return ok; }
};

namespace detail {

// Counts blocks meeting a probe set in at least `threshold` vertices via a
// vertex-to-block index with epoch-stamped counters, so no per-probe reset
// of the whole count array is needed.
class BlockMeetScanner {
 public:
  explicit BlockMeetScanner(const SetSystem& sys)
      : sys_(sys), by_vertex_(sys.n()), count_(sys.size(), 0), stamp_(sys.size(), 0) {
    for (std::size_t b = 0; b < sys.size(); ++b)
      for (int v : sys.blocks()[b]) by_vertex_[v].push_back(static_cast<int>(b));
  }

  // Number of blocks K with |K ∩ P| >= threshold, stopping early once
  // `cap` of them have been seen.
  int count_meeting(const std::vector<int>& probe, int threshold, int cap) {
    ++epoch_;
    int found = 0;
    for (int v : probe) {
      for (int b : by_vertex_[v]) {
        if (stamp_[b] != epoch_) {
          stamp_[b] = epoch_;
          count_[b] = 0;
        }
        if (++count_[b] == threshold && ++found >= cap) return found;
      }
    }
    return found;
  }

  bool meets(const std::vector<int>& probe, int threshold) {
    return count_meeting(probe, threshold, 1) > 0;
  }

 private:
  const SetSystem& sys_;
  std::vector<std::vector<int>> by_vertex_;
  std::vector<int> count_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

// Lexicographically first p-subset of [0,n) that no block meets in at
// least `threshold` vertices. The rank space may be partitioned across
// workers (LOTTERYFORGE_THREADS); the result equals the sequential scan
// because the smallest failing rank wins.
inline std::optional<std::vector<int>> first_unmet_p_subset(const SetSystem& sys,
                                                            int p, int threshold) {
  const int n = sys.n();
  const std::uint64_t total = choose(n, p);
  if (total == 0) return std::nullopt;

  const int workers = worker_count();
  if (workers <= 1 || total < 4096) {
    BlockMeetScanner scan(sys);
    std::vector<int> probe;
    first_subset(probe, n, p);
    do {
      if (!scan.meets(probe, threshold)) return probe;
    } while (next_subset(probe, n));
    return std::nullopt;
  }

  std::atomic<std::uint64_t> best{total};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::uint64_t lo = total / workers * w + std::min<std::uint64_t>(w, total % workers);
      const std::uint64_t hi = lo + total / workers + (static_cast<std::uint64_t>(w) < total % workers ? 1 : 0);
      if (lo >= hi) return;
      BlockMeetScanner scan(sys);
      std::vector<int> probe = subset_unrank(lo, n, p);
      for (std::uint64_t rank = lo; rank < hi; ++rank) {
        if (rank >= best.load(std::memory_order_relaxed)) break;
        if (!scan.meets(probe, threshold)) {
          std::uint64_t cur = best.load();
          while (rank < cur && !best.compare_exchange_weak(cur, rank)) {
          }
          break;
        }
        next_subset(probe, n);
      }
    });
  }
  for (auto& t : pool) t.join();

  const std::uint64_t hit = best.load();
  if (hit == total) return std::nullopt;
  return subset_unrank(hit, n, p);
}

}  // namespace detail

// Lottery property: every p-subset P of [0,n) has a block K with
// |K ∩ P| >= r. Vacuously true when p > n.
inline Verdict verify_lottery(const SetSystem& sys, const Params& params) {
  if (sys.n() != params.n || sys.k() != params.k)
    throw parameter_error("verify_lottery: system does not match params");
  if (params.p > params.n) return Verdict::pass();
  auto w = detail::first_unmet_p_subset(sys, params.p, params.r);
  if (!w) return Verdict::pass();
  return Verdict::fail(std::move(*w), "uncovered-p-set");
}

// Covering property: every r-subset lies inside some block. Identical to
// the lottery property at p = r.
inline Verdict verify_covering(const SetSystem& sys, int r) {
  if (r < 1 || r > sys.k())
    throw parameter_error("verify_covering: need 1 <= r <= k");
  if (r > sys.n()) return Verdict::pass();
  auto w = detail::first_unmet_p_subset(sys, r, r);
  if (!w) return Verdict::pass();
  return Verdict::fail(std::move(*w), "uncovered-r-set");
}

// Turán p-property of an r-uniform system: every p-subset of [0,n)
// contains some block entirely.
inline Verdict verify_turan_property(const SetSystem& sys, int p) {
  if (p < sys.k())
    throw parameter_error("verify_turan_property: need p >= uniformity");
  if (p > sys.n()) return Verdict::pass();
  auto w = detail::first_unmet_p_subset(sys, p, sys.k());
  if (!w) return Verdict::pass();
  return Verdict::fail(std::move(*w), "p-set-without-edge");
}

// GDD property: blocks are transversals of the layout, and any r vertices
// from r distinct parts lie in exactly one block.
inline Verdict verify_gdd(const SetSystem& sys, const PartiteLayout& layout, int r) {
  if (sys.n() != layout.total() || sys.k() != layout.parts)
    throw parameter_error("verify_gdd: system does not match layout");
  if (r < 1 || r > layout.parts)
    throw parameter_error("verify_gdd: need 1 <= r <= parts");

  // A sorted transversal has its j-th vertex in part j.
  for (const Block& b : sys.blocks())
    for (int j = 0; j < layout.parts; ++j)
      if (layout.part_of(b[j]) != j)
        return Verdict::fail(b, "non-transversal-block");

  detail::BlockMeetScanner scan(sys);
  std::vector<int> parts;
  first_subset(parts, layout.parts, r);
  std::vector<int> z(r, 0);
  std::vector<int> verts(r);
  do {
    std::fill(z.begin(), z.end(), 0);
    for (;;) {
      for (int i = 0; i < r; ++i) verts[i] = layout.vertex(parts[i], z[i]);
      const int hits = scan.count_meeting(verts, r, 2);
      if (hits == 0) return Verdict::fail(verts, "uncovered-r-set");
      if (hits >= 2) return Verdict::fail(verts, "multiply-covered-r-set");
      int i = r - 1;
      while (i >= 0 && z[i] == layout.part_size - 1) z[i--] = 0;
      if (i < 0) break;
      ++z[i];
    }
  } while (next_subset(parts, layout.parts));
  return Verdict::pass();
}

// Patch-coverage claim: every r-subset of [0,m*N) whose projection
// (integer division by N) takes at most r-1 distinct values is contained
// in some block. Vacuous at r = 1.
inline Verdict check_patch_coverage(const SetSystem& patch_blocks, int m, int N, int r) {
  if (m < 1 || N < 1) throw parameter_error("check_patch_coverage: need m, N >= 1");
  if (r < 1) throw parameter_error("check_patch_coverage: need r >= 1");
  if (patch_blocks.n() != m * N)
    throw parameter_error("check_patch_coverage: system must live on m*N vertices");
  if (r > patch_blocks.n()) return Verdict::pass();

  detail::BlockMeetScanner scan(patch_blocks);
  std::vector<int> probe;
  first_subset(probe, m * N, r);
  do {
    int projections = 1;
    for (std::size_t i = 1; i < probe.size(); ++i)
      if (probe[i] / N != probe[i - 1] / N) ++projections;
    if (projections <= r - 1 && !scan.meets(probe, r))
      return Verdict::fail(probe, "uncovered-patch-set");
  } while (next_subset(probe, m * N));
  return Verdict::pass();
}

}  // namespace lotteryforge
