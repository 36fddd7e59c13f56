// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "triroots/errors.hpp"
#include "triroots/numeric.hpp"

namespace triroots {

/// Dense matrix over Z_n, entries kept reduced in [0, n).
struct ResidueMatrix {
  std::uint64_t modulus = 1;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> e;  // row-major

  ResidueMatrix() = default;
  ResidueMatrix(std::uint64_t n, std::size_t r, std::size_t c)
      : modulus(n), rows(r), cols(c), e(r * c, 0) {}

  static ResidueMatrix from_rows(
      std::uint64_t n, const std::vector<std::vector<std::uint64_t>>& data) {
    ResidueMatrix m(n, data.size(), data.empty() ? 0 : data[0].size());
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (data[i].size() != m.cols) fail("dimension_mismatch", "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = data[i][j] % n;
    }
    return m;
  }

  static ResidueMatrix identity(std::uint64_t n, std::size_t k) {
    ResidueMatrix m(n, k, k);
    for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1 % n;
    return m;
  }

  std::uint64_t& at(std::size_t r, std::size_t c) { return e[r * cols + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return e[r * cols + c]; }

  ResidueMatrix leading_principal(std::size_t k) const {
    ResidueMatrix m(modulus, k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m.at(i, j) = at(i, j);
    return m;
  }

  friend bool operator==(const ResidueMatrix& a, const ResidueMatrix& b) {
    return a.modulus == b.modulus && a.rows == b.rows && a.cols == b.cols &&
           a.e == b.e;
  }
};

inline ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (a.modulus != b.modulus || a.cols != b.rows)
    fail("dimension_mismatch", "incompatible matrix product");
  ResidueMatrix c(a.modulus, a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      std::uint64_t aik = a.at(i, k);
      if (!aik) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        c.at(i, j) = addmod(c.at(i, j), mulmod(aik, b.at(k, j), a.modulus), a.modulus);
    }
  return c;
}

inline bool is_unit(std::uint64_t a, std::uint64_t n) {
  return gcd_u64(a % n, n) == 1;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n) {
  a %= n;
  XGcd r = xgcd(a, n);
  if (r.g != 1) fail("not_a_unit", std::to_string(a) + " is not a unit mod " + std::to_string(n));
  return to_residue(r.s, n);
}

/// Smallest solution x in [0, n) of e*x = d (mod n), if any.
inline std::optional<std::uint64_t> solve_linear_min(std::uint64_t d,
                                                     std::uint64_t e,
                                                     std::uint64_t n) {
  d %= n;
  e %= n;
  if (n == 1) return 0;
  if (e == 0) {
    if (d == 0) return 0;
    return std::nullopt;
  }
  std::uint64_t g = gcd_u64(e, n);
  if (d % g != 0) return std::nullopt;
  std::uint64_t n1 = n / g;
  std::uint64_t x0 = mulmod((d / g) % n1, inv_mod((e / g) % n1, n1), n1);
  return x0;  // all solutions are x0 + t*n1; x0 is the smallest
}

/// Smallest unit u in [0, n) with u*e = d (mod n). Exists iff
/// gcd(d, n) = gcd(e, n). Units witness that d and e generate the same ideal
/// of Z_n, which is the solvability condition of the diagonal-equivalence
/// criterion.
inline std::optional<std::uint64_t> unit_ratio(std::uint64_t d, std::uint64_t e,
                                               std::uint64_t n) {
  d %= n;
  e %= n;
  if (n == 1) return 0;  // Z_1 is trivial; 0 acts as the unit
  if (gcd_u64(d, n) != gcd_u64(e, n)) return std::nullopt;
  if (e == 0) return 1;  // d == 0 too; every unit works
  std::uint64_t g = gcd_u64(e, n);
  std::uint64_t n1 = n / g;
  std::uint64_t x0 = n1 == 1 ? 0 : mulmod((d / g) % n1, inv_mod((e / g) % n1, n1), n1);
  // The solutions are exactly x0 + t*n1, t in [0, g); x0 is a unit mod n1, so
  // the class contains a unit mod n. Ascending scan returns the smallest.
  for (std::uint64_t t = 0; t < g; ++t) {
    std::uint64_t u = x0 + t * n1;
    if (is_unit(u, n)) return u;
  }
  return std::nullopt;  // not reached when gcds match
}

/// Determinant mod n via fraction-free (Bareiss) elimination over the integer
/// lift; exact over rings with zero divisors, unlike modular Gaussian
/// elimination.
inline std::uint64_t det_mod(const ResidueMatrix& m) {
  if (m.rows != m.cols) fail("not_square", "determinant of a non-square matrix");
  std::size_t k = m.rows;
  if (k == 0) return 1 % m.modulus;
  std::vector<Int> a(k * k);
  for (std::size_t i = 0; i < k * k; ++i) a[i] = Int(m.e[i]);
  auto at = [&](std::size_t r, std::size_t c) -> Int& { return a[r * k + c]; };
  int sign = 1;
  Int prev = 1;
  for (std::size_t col = 0; col + 1 < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && at(pivot, col) == 0) ++pivot;
    if (pivot == k) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < k; ++j) std::swap(at(pivot, j), at(col, j));
      sign = -sign;
    }
    for (std::size_t i = col + 1; i < k; ++i) {
      for (std::size_t j = col + 1; j < k; ++j) {
        at(i, j) = (at(col, col) * at(i, j) - at(i, col) * at(col, j)) / prev;
      }
      at(i, col) = 0;
    }
    prev = at(col, col);
  }
  Int det = sign * at(k - 1, k - 1);
  return mod_u64(det, m.modulus);
}

inline bool is_invertible(const ResidueMatrix& m) {
  return is_unit(det_mod(m), m.modulus);
}

/// Howell normal form over Z_n: the canonical echelon form whose identity
/// characterizes row-span equality. Hermite form is not canonical over Z_n
/// because of zero divisors; the Howell form fixes that by closing the span
/// under the "annihilator shadow" rows (n/g times a pivot row), normalizing
/// each pivot to the divisor gcd(pivot, n) of n, and reducing entries above a
/// pivot into [0, pivot).
///
/// Returns the nonzero rows only; two matrices over the same Z_n have equal
/// row spans iff their Howell forms compare equal.
inline ResidueMatrix howell_form(const ResidueMatrix& input) {
  const std::uint64_t n = input.modulus;
  const std::size_t c = input.cols;
  using Row = std::vector<std::uint64_t>;

  auto leading = [&](const Row& r) {
    std::size_t j = 0;
    while (j < c && r[j] == 0) ++j;
    return j;  // == c for the zero row
  };

  std::vector<Row> work;
  for (std::size_t i = 0; i < input.rows; ++i) {
    Row r(c);
    for (std::size_t j = 0; j < c; ++j) r[j] = input.at(i, j) % n;
    if (leading(r) < c) work.push_back(std::move(r));
  }

  std::vector<Row> result;
  for (std::size_t col = 0; col < c; ++col) {
    std::vector<Row> next;
    std::optional<Row> pivot;
    for (auto& row : work) {
      if (leading(row) != col) {
        next.push_back(std::move(row));
        continue;
      }
      if (!pivot) {
        pivot = std::move(row);
        continue;
      }
      // Merge into the pivot with an integer xgcd step; the byproduct row has
      // a zero at this column.
      Row& p = *pivot;
      XGcd x = xgcd(p[col], row[col]);
      std::uint64_t s = to_residue(x.s, n), t = to_residue(x.t, n);
      std::uint64_t pc = p[col] / x.g, rc = row[col] / x.g;
      Row merged(c), residue(c);
      for (std::size_t j = 0; j < c; ++j) {
        merged[j] = addmod(mulmod(s, p[j], n), mulmod(t, row[j], n), n);
        residue[j] = submod(mulmod(pc, row[j], n), mulmod(rc, p[j], n), n);
      }
      pivot = std::move(merged);
      if (leading(residue) < c) next.push_back(std::move(residue));
    }
    if (pivot) {
      Row& p = *pivot;
      // Normalize the pivot entry to gcd(entry, n), a divisor of n.
      std::uint64_t g = gcd_u64(p[col], n);
      std::uint64_t u = *unit_ratio(g, p[col], n);
      for (std::size_t j = 0; j < c; ++j) p[j] = mulmod(u, p[j], n);
      // Shadow row: (n/g) * pivot spans the annihilator part and has a later
      // leading column; required for canonicity.
      std::uint64_t h = n / g;
      Row shadow(c);
      for (std::size_t j = 0; j < c; ++j) shadow[j] = mulmod(h, p[j], n);
      if (leading(shadow) < c) next.push_back(std::move(shadow));
      result.push_back(std::move(p));
    }
    work = std::move(next);
  }

  // Reduce entries above each pivot into [0, pivot).
  for (std::size_t i = 0; i < result.size(); ++i) {
    std::size_t jcol = leading(result[i]);
    std::uint64_t piv = result[i][jcol];
    for (std::size_t i2 = 0; i2 < i; ++i2) {
      std::uint64_t quot = result[i2][jcol] / piv;
      if (!quot) continue;
      for (std::size_t j = jcol; j < c; ++j)
        result[i2][j] = submod(result[i2][j], mulmod(quot, result[i][j], n), n);
    }
  }

  ResidueMatrix out(n, result.size(), c);
  for (std::size_t i = 0; i < result.size(); ++i)
    for (std::size_t j = 0; j < c; ++j) out.at(i, j) = result[i][j];
  return out;
}

/// Visit every v in [0, n)^cols with A v^T = 0 (mod n), by back-substitution
/// over the Howell form. Cost is proportional to the number of solutions, not
/// n^cols.
inline void for_each_nullspace_vector(
    const ResidueMatrix& a,
    const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  const std::uint64_t n = a.modulus;
  const std::size_t c = a.cols;
  ResidueMatrix h = howell_form(a);

  // pivot_row[j] = row index with leading column j, or npos.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pivot_row(c, npos);
  for (std::size_t i = 0; i < h.rows; ++i) {
    std::size_t j = 0;
    while (j < c && h.at(i, j) == 0) ++j;
    pivot_row[j] = i;
  }

  std::vector<std::uint64_t> v(c, 0);
  auto rec = [&](auto&& self, std::size_t col_plus1) -> void {
    if (col_plus1 == 0) {
      visit(v);
      return;
    }
    std::size_t col = col_plus1 - 1;
    if (pivot_row[col] == npos) {
      for (std::uint64_t x = 0; x < n; ++x) {
        v[col] = x;
        self(self, col);
      }
      return;
    }
    std::size_t i = pivot_row[col];
    std::uint64_t rhs = 0;
    for (std::size_t j = col + 1; j < c; ++j)
      rhs = addmod(rhs, mulmod(h.at(i, j), v[j], n), n);
    rhs = submod(0, rhs, n);
    std::uint64_t piv = h.at(i, col);
    std::uint64_t g = gcd_u64(piv, n);
    if (rhs % g != 0) return;
    std::uint64_t n1 = n / g;
    std::uint64_t x0 = n1 == 1 ? 0
                               : mulmod((rhs / g) % n1,
                                        inv_mod((piv / g) % n1, n1), n1);
    for (std::uint64_t t = 0; t < g; ++t) {
      v[col] = x0 + t * n1;
      self(self, col);
    }
  };
  rec(rec, c);
}

}  // namespace triroots
