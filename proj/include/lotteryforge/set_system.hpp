#pragma once

// Uniform set systems (k-graphs) in canonical form, plus the structural
// operations on them: shadows, complements, blow-ups, pair covering and
// subgraph containment.

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "lotteryforge/common.hpp"

namespace lotteryforge {

using Block = std::vector<int>;

// Instance parameters (n,k,r,p). p may exceed n, in which case every
// probe-based property is vacuously satisfied.
struct Params {
  int n;
  int k;
  int r;
  int p;

  Params(int n_, int k_, int r_, int p_) : n(n_), k(k_), r(r_), p(p_) {
    if (!(1 <= r && r <= k && k <= n))
      throw parameter_error("Params: need 1 <= r <= k <= n");
    if (p < r) throw parameter_error("Params: need p >= r");
  }
};

// An n-vertex k-uniform block system. Canonical form is maintained as an
// invariant: every block ascending, blocks lexicographically sorted and
// pairwise distinct. Vertices are dense 0-based integers in [0, n).
class SetSystem {
 public:
  SetSystem(int n, int k) : n_(n), k_(k) { check_header(); }

  SetSystem(int n, int k, std::vector<Block> blocks)
      : n_(n), k_(k), blocks_(std::move(blocks)) {
    check_header();
    for (Block& b : blocks_) {
      std::sort(b.begin(), b.end());
      if (static_cast<int>(b.size()) != k_)
        throw parameter_error("SetSystem: block size differs from k");
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] < 0 || b[i] >= n_)
          throw parameter_error("SetSystem: vertex out of range");
        if (i > 0 && b[i] == b[i - 1])
          throw parameter_error("SetSystem: repeated vertex in block");
      }
    }
    std::sort(blocks_.begin(), blocks_.end());
    blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
  }

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }

  bool contains_block(const Block& sorted_block) const {
    return std::binary_search(blocks_.begin(), blocks_.end(), sorted_block);
  }

  // Vertices appearing in at least one block, ascending.
  std::vector<int> covered_vertices() const {
    std::vector<char> seen(n_, 0);
    for (const Block& b : blocks_)
      for (int v : b) seen[v] = 1;
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (seen[v]) out.push_back(v);
    return out;
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(n_, 0);
    for (const Block& b : blocks_)
      for (int v : b) ++deg[v];
    return deg;
  }

  bool operator==(const SetSystem&) const = default;

 private:
  void check_header() const {
    if (n_ < 0) throw parameter_error("SetSystem: negative vertex count");
    if (k_ < 1) throw parameter_error("SetSystem: block size must be positive");
  }

  int n_;
  int k_;
  std::vector<Block> blocks_;
};

// Complete r-graph K_p^r on p vertices.
inline SetSystem complete_graph(int p, int r) {
  if (r < 1 || r > p) throw parameter_error("complete_graph: need 1 <= r <= p");
  std::vector<Block> blocks;
  std::vector<int> s;
  first_subset(s, p, r);
  do {
    blocks.push_back(s);
  } while (next_subset(s, p));
  return SetSystem(p, r, std::move(blocks));
}

// r-shadow: all r-subsets contained in some block.
inline SetSystem shadow(const SetSystem& sys, int r) {
  if (r < 1 || r > sys.k()) throw parameter_error("shadow: need 1 <= r <= k");
  std::vector<Block> out;
  std::vector<int> idx;
  Block sub(r);
  for (const Block& b : sys.blocks()) {
    first_subset(idx, sys.k(), r);
    do {
      for (int i = 0; i < r; ++i) sub[i] = b[idx[i]];
      out.push_back(sub);
    } while (next_subset(idx, sys.k()));
  }
  return SetSystem(sys.n(), r, std::move(out));
}

// All k-subsets of [0,n) absent from sys.
inline SetSystem complement_system(const SetSystem& sys) {
  std::vector<Block> out;
  std::vector<int> s;
  if (!first_subset(s, sys.n(), sys.k())) return SetSystem(sys.n(), sys.k());
  std::size_t idx = 0;
  const auto& present = sys.blocks();
  do {
    if (idx < present.size() && present[idx] == s)
      ++idx;
    else
      out.push_back(s);
  } while (next_subset(s, sys.n()));
  return SetSystem(sys.n(), sys.k(), std::move(out));
}

// True iff every pair of vertices that each appear in some block shares a
// block. Vertices in no block are ignored.
inline bool is_pair_covering(const SetSystem& sys) {
  if (sys.k() < 2)
    throw parameter_error("is_pair_covering: need block size >= 2");
  const std::vector<int> verts = sys.covered_vertices();
  const int n = sys.n();
  std::vector<char> together(static_cast<std::size_t>(n) * n, 0);
  for (const Block& b : sys.blocks())
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        together[static_cast<std::size_t>(b[i]) * n + b[j]] = 1;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (!together[static_cast<std::size_t>(verts[i]) * n + verts[j]])
        return false;
  return true;
}

// Backtracking search for an injection of the pattern's covered vertices
// into host vertices mapping every pattern block onto a host block.
// Pattern vertices are assigned in order of decreasing degree; host
// candidates are pruned by degree.
inline bool contains_subgraph(const SetSystem& host, const SetSystem& pattern,
                              int vertex_budget = 10) {
  if (host.k() != pattern.k())
    throw parameter_error("contains_subgraph: uniformity mismatch");
  if (pattern.empty()) return true;
  if (pattern.size() > host.size()) return false;

  const std::vector<int> pverts = pattern.covered_vertices();
  const int pm = static_cast<int>(pverts.size());
  if (pm > vertex_budget)
    throw capacity_error("contains_subgraph: pattern exceeds vertex budget");

  std::vector<int> relabel(pattern.n(), -1);
  for (int i = 0; i < pm; ++i) relabel[pverts[i]] = i;
  std::vector<Block> pblocks;
  pblocks.reserve(pattern.size());
  for (const Block& b : pattern.blocks()) {
    Block q;
    q.reserve(b.size());
    for (int v : b) q.push_back(relabel[v]);
    std::sort(q.begin(), q.end());
    pblocks.push_back(std::move(q));
  }

  std::vector<int> pdeg(pm, 0);
  for (const Block& b : pblocks)
    for (int v : b) ++pdeg[v];
  const std::vector<int> hdeg = host.degrees();

  std::vector<int> order(pm);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pdeg[a] > pdeg[b]; });
  std::vector<int> pos(pm);
  for (int t = 0; t < pm; ++t) pos[order[t]] = t;

  // A pattern block becomes checkable once its last vertex (in assignment
  // order) is placed.
  std::vector<std::vector<int>> check_at(pm);
  for (std::size_t bi = 0; bi < pblocks.size(); ++bi) {
    int last = 0;
    for (int v : pblocks[bi]) last = std::max(last, pos[v]);
    check_at[last].push_back(static_cast<int>(bi));
  }

  std::vector<int> image(pm, -1);
  std::vector<char> used(host.n(), 0);
  Block img;
  img.reserve(host.k());

  std::function<bool(int)> extend = [&](int t) -> bool {
    if (t == pm) return true;
    const int v = order[t];
    for (int h = 0; h < host.n(); ++h) {
      if (used[h] || hdeg[h] < pdeg[v]) continue;
      image[v] = h;
      used[h] = 1;
      bool feasible = true;
      for (int bi : check_at[t]) {
        img.clear();
        for (int u : pblocks[bi]) img.push_back(image[u]);
        std::sort(img.begin(), img.end());
        if (!host.contains_block(img)) {
          feasible = false;
          break;
        }
      }
      if (feasible && extend(t + 1)) return true;
      used[h] = 0;
      image[v] = -1;
    }
    return false;
  };
  return extend(0);
}

// A family of forbidden r-graphs. Members must share one arity; the
// pair-covering flag records whether every member satisfies the
// pair-covering hypothesis of the blow-up lemma.
class ForbiddenFamily {
 public:
  explicit ForbiddenFamily(std::vector<SetSystem> members)
      : members_(std::move(members)) {
    arity_ = members_.empty() ? 0 : members_.front().k();
    for (const SetSystem& f : members_)
      if (f.k() != arity_)
        throw parameter_error("ForbiddenFamily: members of mixed arity");
    for (const SetSystem& f : members_) {
      const bool pc = f.k() >= 2 ? is_pair_covering(f)
                                 : f.covered_vertices().size() <= 1;
      all_pair_covering_ = all_pair_covering_ && pc;
    }
  }

  int arity() const { return arity_; }
  const std::vector<SetSystem>& members() const { return members_; }
  bool all_pair_covering() const { return all_pair_covering_; }

 private:
  std::vector<SetSystem> members_;
  int arity_ = 0;
  bool all_pair_covering_ = true;
};

inline bool is_family_free(const SetSystem& host, const ForbiddenFamily& fam,
                           int vertex_budget = 10) {
  if (!fam.members().empty() && fam.arity() != host.k())
    throw parameter_error("is_family_free: arity mismatch");
  for (const SetSystem& f : fam.members())
    if (contains_subgraph(host, f, vertex_budget)) return false;
  return true;
}

// N-blow-up: vertex v becomes clones v*N+z, z in [0,N); each block becomes
// the N^k blocks over all clone choices.
inline SetSystem blow_up(const SetSystem& sys, int N) {
  if (N < 1) throw parameter_error("blow_up: clone count must be positive");
  const int k = sys.k();
  std::vector<Block> out;
  out.reserve(sys.size());
  std::vector<int> z(k, 0);
  Block img(k);
  for (const Block& b : sys.blocks()) {
    std::fill(z.begin(), z.end(), 0);
    for (;;) {
      for (int i = 0; i < k; ++i) img[i] = b[i] * N + z[i];
      out.push_back(img);
      int i = k - 1;
      while (i >= 0 && z[i] == N - 1) z[i--] = 0;
      if (i < 0) break;
      ++z[i];
    }
  }
  return SetSystem(sys.n() * N, k, std::move(out));
}

}  // namespace lotteryforge
