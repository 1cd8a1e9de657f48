#pragma once

// Exact integer and mod-N linear algebra: Vandermonde determinants, the
// lcm constant M_{k,n}, modular inverses, power matrices, and solving
// square systems whose determinant is a unit mod N.
//
// Determinants are always computed over the unbounded integers before any
// reduction: N need not be prime, so elimination mod N could hit zero
// divisors. Cramer's rule with a single modular inverse avoids pivot
// selection mod N entirely; at the sizes in scope this is cheap.

#include <numeric>
#include <utility>
#include <vector>

#include "lotteryforge/common.hpp"

namespace lotteryforge {

// Matrix over Z_N, entries stored reduced to [0, N).
struct ZModMatrix {
  long long modulus;
  int rows;
  int cols;
  std::vector<long long> a;  // row-major

  ZModMatrix(int rows_, int cols_, long long modulus_)
      : modulus(modulus_), rows(rows_), cols(cols_) {
    if (modulus < 2) throw parameter_error("ZModMatrix: modulus must be >= 2");
    if (rows < 1 || cols < 1)
      throw parameter_error("ZModMatrix: dimensions must be positive");
    a.assign(static_cast<std::size_t>(rows) * cols, 0);
  }

  long long& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  long long at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  void set(int i, int j, long long value) {
    long long v = value % modulus;
    if (v < 0) v += modulus;
    at(i, j) = v;
  }
};

// prod_{i<j} (x_j - x_i); the empty and singleton products are 1.
inline bigint vandermonde_det(const std::vector<long long>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] <= xs[i - 1])
      throw parameter_error("vandermonde_det: sequence must be strictly increasing");
  bigint det = 1;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      det *= bigint(xs[j] - xs[i]);
  return det;
}

// M_{k,n}: lcm of Vandermonde determinants over all strictly increasing
// n-sequences from {0,...,k-1}.
inline bigint m_lcm(int k, int n) {
  if (n < 1 || n > k) throw parameter_error("m_lcm: need 1 <= n <= k");
  bigint acc = 1;
  std::vector<int> s;
  first_subset(s, k, n);
  do {
    std::vector<long long> xs(s.begin(), s.end());
    acc = lcm(acc, vandermonde_det(xs));
  } while (next_subset(s, k));
  return acc;
}

// Extended Euclid; throws nonunit_error when gcd(a, N) != 1.
inline long long mod_inverse(long long a, long long N) {
  if (N < 2) throw parameter_error("mod_inverse: modulus must be >= 2");
  a %= N;
  if (a < 0) a += N;
  long long old_r = a, r = N;
  long long old_s = 1, s = 0;
  while (r != 0) {
    const long long q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1)
    throw nonunit_error("mod_inverse: value is not a unit mod N");
  old_s %= N;
  if (old_s < 0) old_s += N;
  return old_s;
}

// Entry (i,j) = j^i mod N, with 0^0 = 1 so row zero is all ones.
inline ZModMatrix power_matrix(int k, int rows, long long N) {
  if (rows < 1 || k < rows)
    throw parameter_error("power_matrix: need 1 <= rows <= k");
  ZModMatrix m(rows, k, N);
  for (int j = 0; j < k; ++j) {
    long long value = 1 % N;
    for (int i = 0; i < rows; ++i) {
      m.at(i, j) = value;
      value = static_cast<long long>(
          static_cast<unsigned __int128>(value) * static_cast<unsigned long long>(j) % static_cast<unsigned long long>(N));
    }
  }
  return m;
}

// Determinant of an integer matrix by fraction-free (Bareiss) elimination
// with row pivoting. Exact; no modular reduction.
inline bigint integer_det(std::vector<std::vector<bigint>> m) {
  const std::size_t d = m.size();
  for (const auto& row : m)
    if (row.size() != d) throw parameter_error("integer_det: matrix not square");
  if (d == 0) return 1;
  int sign = 1;
  bigint prev = 1;
  for (std::size_t c = 0; c + 1 < d; ++c) {
    std::size_t pivot = c;
    while (pivot < d && m[pivot][c] == 0) ++pivot;
    if (pivot == d) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < d; ++i) {
      for (std::size_t j = c + 1; j < d; ++j) {
        m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
      }
      m[i][c] = 0;
    }
    prev = m[c][c];
  }
  return sign > 0 ? m[d - 1][d - 1] : -m[d - 1][d - 1];
}

// Determinant of the entries of a ZModMatrix taken over Z (no reduction).
inline bigint det_exact(const ZModMatrix& m) {
  if (m.rows != m.cols) throw parameter_error("det_exact: matrix not square");
  std::vector<std::vector<bigint>> w(m.rows, std::vector<bigint>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) w[i][j] = m.at(i, j);
  return integer_det(std::move(w));
}

// Unique solution of M x = rhs over Z_N when det(M) is a unit mod N.
// Cramer's rule with exact integer minors; the solution is re-substituted
// before returning.
inline std::vector<long long> solve_unit_system(const ZModMatrix& M,
                                                const std::vector<long long>& rhs) {
  if (M.rows != M.cols)
    throw parameter_error("solve_unit_system: matrix not square");
  if (static_cast<int>(rhs.size()) != M.rows)
    throw parameter_error("solve_unit_system: rhs dimension mismatch");
  const int d = M.rows;
  const long long N = M.modulus;

  const bigint det = det_exact(M);
  long long det_mod = static_cast<long long>(det % N);
  if (det_mod < 0) det_mod += N;
  if (gcd(bigint(det_mod), bigint(N)) != 1)
    throw nonunit_error("solve_unit_system: determinant is not a unit mod N");
  const long long det_inv = mod_inverse(det_mod, N);

  std::vector<long long> x(d, 0);
  std::vector<std::vector<bigint>> w(d, std::vector<bigint>(d));
  for (int col = 0; col < d; ++col) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        w[i][j] = (j == col) ? bigint(rhs[i] % N) : bigint(M.at(i, j));
    const bigint minor = integer_det(w);
    long long m_mod = static_cast<long long>(minor % N);
    if (m_mod < 0) m_mod += N;
    x[col] = static_cast<long long>(
        static_cast<unsigned __int128>(m_mod) * static_cast<unsigned long long>(det_inv) % static_cast<unsigned long long>(N));
  }

  // Re-substitution guard: the result must reproduce rhs exactly.
  for (int i = 0; i < d; ++i) {
    unsigned __int128 acc = 0;
    for (int j = 0; j < d; ++j)
      acc += static_cast<unsigned __int128>(M.at(i, j)) * static_cast<unsigned long long>(x[j]);
    long long want = rhs[i] % N;
    if (want < 0) want += N;
    if (static_cast<long long>(acc % static_cast<unsigned long long>(N)) != want)
      throw std::logic_error("solve_unit_system: re-substitution failed");
  }
  return x;
}

}  // namespace lotteryforge
