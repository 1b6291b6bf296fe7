#pragma once

// Hermite and Smith normal forms of small dense integer matrices.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace quasifold {

using IntMatrix = std::vector<std::vector<mpz_class>>;

namespace detail {

inline void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& f) {
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] -= f * m[src][j];
}

}  // namespace detail

/// Row-style Hermite normal form: H = U*M for unimodular U, H in echelon
/// form with positive pivots and entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped, so the result is a basis of the row
/// lattice of M.
inline IntMatrix hermite_normal_form(IntMatrix m) {
  if (m.empty()) return m;
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    for (;;) {
      // smallest nonzero |entry| at or below row r becomes the pivot
      std::size_t best = m.size();
      for (std::size_t i = r; i < m.size(); ++i)
        if (m[i][c] != 0 && (best == m.size() || abs(m[i][c]) < abs(m[best][c]))) best = i;
      if (best == m.size()) break;
      std::swap(m[r], m[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        detail::add_row_multiple(m, i, r, q);
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (auto& x : m[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      detail::add_row_multiple(m, i, r, q);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  m.resize(r);
  return m;
}

/// Diagonal of the Smith normal form (nonzero invariant factors d1 | d2 | ...).
inline std::vector<mpz_class> smith_invariants(IntMatrix m) {
  std::vector<mpz_class> diag;
  if (m.empty()) return diag;
  const std::size_t rows = m.size(), cols = m.front().size();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (bi == rows || abs(m[i][j]) < abs(m[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return diag;
      std::swap(m[t], m[bi]);
      for (auto& row : m) std::swap(row[t], row[bj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        detail::add_row_multiple(m, i, t, q);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold any entry not divisible by the pivot into row t
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    diag.push_back(abs(m[t][t]));
  }
  return diag;
}

}  // namespace quasifold
