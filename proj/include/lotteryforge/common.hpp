#pragma once

// Shared integer types, error taxonomy, and small combinatorial helpers
// (binomials, lexicographic subset enumeration, rank/unrank).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lotteryforge {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An input exceeds a hard size limit (pattern vertex budget, solver width).
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A value that must be invertible mod N is not a unit.
struct nonunit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A construction was invoked outside its stated preconditions.
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// C(n,k) in 64 bits; throws capacity_error rather than overflowing.
inline std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > static_cast<unsigned __int128>(UINT64_MAX))
      throw capacity_error("choose: value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

inline bigint choose_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  bigint acc = 1;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

// Lexicographic enumeration of k-subsets of [0,n) as ascending vectors.
// first_subset yields {0,...,k-1}; next_subset advances in place and
// returns false after the last subset, leaving it unchanged.
inline bool first_subset(std::vector<int>& s, int n, int k) {
  if (k < 0 || k > n) return false;
  s.resize(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  return true;
}

inline bool next_subset(std::vector<int>& s, int n) {
  const int k = static_cast<int>(s.size());
  for (int i = k - 1; i >= 0; --i) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Rank of an ascending k-subset in the lexicographic order above.
inline std::uint64_t subset_rank(const std::vector<int>& s, int n) {
  const int k = static_cast<int>(s.size());
  std::uint64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < s[i]; ++v) rank += choose(n - 1 - v, k - 1 - i);
    prev = s[i];
  }
  return rank;
}

inline std::vector<int> subset_unrank(std::uint64_t rank, int n, int k) {
  std::vector<int> s(static_cast<std::size_t>(k));
  int v = 0;
  for (int i = 0; i < k; ++i) {
    for (;;) {
      const std::uint64_t c = choose(n - 1 - v, k - 1 - i);
      if (rank < c) break;
      rank -= c;
      ++v;
    }
    s[static_cast<std::size_t>(i)] = v++;
  }
  return s;
}

// Worker count from LOTTERYFORGE_THREADS; 0 or unset means sequential.
inline int worker_count() {
  const char* env = std::getenv("LOTTERYFORGE_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v <= 0) return 1;
  return static_cast<int>(std::min<long>(v, 64));
}

}  // namespace lotteryforge
