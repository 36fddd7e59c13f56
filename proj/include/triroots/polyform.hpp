// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "triroots/errors.hpp"
#include "triroots/ffield.hpp"
#include "triroots/modring.hpp"
#include "triroots/numeric.hpp"

namespace triroots {

/// One monomial a * x_1^{e_1} ... x_n^{e_n}; exponents are arbitrary
/// precision and unreduced. The all-zero exponent vector is not allowed in a
/// term list (constants go through the polynomial's b slot).
struct Term {
  std::uint64_t coeff = 0;  // element code, nonzero
  std::vector<Int> expo;
};

/// f = sum of terms - b, over a fixed field and variable count.
class SparsePoly {
 public:
  SparsePoly(const FieldSpec& field, unsigned n_vars, std::vector<Term> terms,
             std::uint64_t b)
      : field_(&field), n_vars_(n_vars), terms_(std::move(terms)), b_(b) {
    if (n_vars_ == 0) fail("bad_poly", "polynomial needs at least one variable");
    if (b_ >= field.q()) fail("bad_element", "constant out of range");
    for (const Term& t : terms_) {
      if (t.coeff == 0 || t.coeff >= field.q())
        fail("bad_poly", "term coefficients must be nonzero field elements");
      if (t.expo.size() != n_vars_) fail("bad_poly", "exponent vector arity mismatch");
      bool all_zero = true;
      for (const Int& d : t.expo) {
        if (d < 0) fail("bad_poly", "exponents must be nonnegative");
        if (d > 0) all_zero = false;
      }
      if (all_zero) fail("bad_poly", "constant terms go in the b slot");
    }
    for (std::size_t i = 0; i < terms_.size(); ++i)
      for (std::size_t j = i + 1; j < terms_.size(); ++j)
        if (terms_[i].expo == terms_[j].expo)
          fail("bad_poly", "duplicate exponent vector");
  }

  const FieldSpec& field() const { return *field_; }
  unsigned n_vars() const { return n_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::uint64_t b() const { return b_; }

 private:
  const FieldSpec* field_;
  unsigned n_vars_;
  std::vector<Term> terms_;
  std::uint64_t b_;
};

/// Triangular shape: term j uses variables 1..j only, with positive diagonal
/// exponent d_{j,j}. Column j of expo() holds (d_{1,j}, ..., d_{j,j}).
class TriangularPoly {
 public:
  TriangularPoly(const FieldSpec& field, std::vector<std::uint64_t> coeffs,
                 std::uint64_t b, std::vector<std::vector<Int>> expo_columns)
      : field_(&field),
        coeffs_(std::move(coeffs)),
        b_(b),
        expo_(std::move(expo_columns)) {
    unsigned n = static_cast<unsigned>(coeffs_.size());
    if (n == 0) fail("not_triangular", "triangular polynomial needs at least one term");
    if (expo_.size() != n) fail("not_triangular", "exponent table must have one column per term");
    if (b_ >= field.q()) fail("bad_element", "constant out of range");
    for (unsigned j = 0; j < n; ++j) {
      if (coeffs_[j] == 0 || coeffs_[j] >= field.q())
        fail("bad_poly", "coefficients must be nonzero field elements");
      if (expo_[j].size() != j + 1)
        fail("not_triangular", "column " + std::to_string(j + 1) + " must list exponents d_{1,j}..d_{j,j}");
      for (const Int& d : expo_[j])
        if (d < 0) fail("not_triangular", "exponents must be nonnegative");
      if (expo_[j][j] <= 0) fail("not_triangular", "diagonal exponents must be positive");
    }
    fully_ = true;
    for (unsigned j = 0; j < n && fully_; ++j)
      for (unsigned i = 0; i <= j; ++i)
        if (expo_[j][i] == 0) { fully_ = false; break; }
  }

  const FieldSpec& field() const { return *field_; }
  unsigned n() const { return static_cast<unsigned>(coeffs_.size()); }
  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
  std::uint64_t b() const { return b_; }
  bool fully_triangular() const { return fully_; }

  /// d_{i,j}, 1-indexed, valid for 1 <= i <= j <= n.
  const Int& d(unsigned i, unsigned j) const { return expo_[j - 1][i - 1]; }
  const std::vector<std::vector<Int>>& expo_columns() const { return expo_; }

  SparsePoly to_sparse() const {
    std::vector<Term> terms(n());
    for (unsigned j = 0; j < n(); ++j) {
      terms[j].coeff = coeffs_[j];
      terms[j].expo.assign(n(), Int(0));
      for (unsigned i = 0; i <= j; ++i) terms[j].expo[i] = expo_[j][i];
    }
    return SparsePoly(*field_, n(), std::move(terms), b_);
  }

 private:
  const FieldSpec* field_;
  std::vector<std::uint64_t> coeffs_;
  std::uint64_t b_;
  std::vector<std::vector<Int>> expo_;
  bool fully_ = false;
};

enum class PolyClass { general, triangular, fully_triangular };

struct ClassifyResult {
  PolyClass cls = PolyClass::general;
  std::optional<TriangularPoly> triangular;  // set unless cls == general
};

/// Decide whether the terms can be ordered into triangular shape. A term
/// qualifies for position j exactly when its highest used variable is j, so
/// the ordering exists iff term -> max variable is a bijection onto 1..n.
inline ClassifyResult classify(const SparsePoly& f) {
  ClassifyResult out;
  unsigned n = f.n_vars();
  if (f.terms().size() != n) return out;
  std::vector<int> pos(n, -1);
  for (std::size_t t = 0; t < f.terms().size(); ++t) {
    unsigned maxvar = 0;
    for (unsigned i = 0; i < n; ++i)
      if (f.terms()[t].expo[i] > 0) maxvar = i + 1;
    if (pos[maxvar - 1] != -1) return out;  // two terms claim the same slot
    pos[maxvar - 1] = static_cast<int>(t);
  }
  std::vector<std::uint64_t> coeffs(n);
  std::vector<std::vector<Int>> expo(n);
  for (unsigned j = 0; j < n; ++j) {
    const Term& t = f.terms()[pos[j]];
    coeffs[j] = t.coeff;
    expo[j].assign(t.expo.begin(), t.expo.begin() + j + 1);
  }
  out.triangular.emplace(f.field(), std::move(coeffs), f.b(), std::move(expo));
  out.cls = out.triangular->fully_triangular() ? PolyClass::fully_triangular
                                               : PolyClass::triangular;
  return out;
}

/// Augmented degree matrix: all-ones top row, one column per term, plus the
/// (1,0,...,0) column when b != 0. Entries use the [1, q-1] representative for
/// positive exponents (a positive exponent never reduces to 0: x^{q-1} and
/// x^0 differ at x = 0) and 0 for exponent 0; residues() collapses that back
/// to true residues mod q-1 for modular work.
struct AugMatrix {
  std::uint64_t modulus = 1;  // q - 1
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> e;  // row-major, entries in [0, q-1]

  std::uint64_t& at(std::size_t r, std::size_t c) { return e[r * cols + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return e[r * cols + c]; }

  ResidueMatrix residues() const {
    ResidueMatrix m(modulus, rows, cols);
    for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = e[i] % modulus;
    return m;
  }

  friend bool operator==(const AugMatrix& a, const AugMatrix& b) {
    return a.modulus == b.modulus && a.rows == b.rows && a.cols == b.cols && a.e == b.e;
  }
};

inline std::uint64_t reduce_exponent(const Int& d, std::uint64_t q_minus_1) {
  if (d == 0) return 0;
  std::uint64_t r = mod_u64(d, q_minus_1);
  return r == 0 ? q_minus_1 : r;
}

inline AugMatrix augmented_degree_matrix(const SparsePoly& f) {
  std::uint64_t n1 = f.field().q() - 1;
  AugMatrix m;
  m.modulus = n1;
  m.rows = f.n_vars() + 1;
  m.cols = f.terms().size() + (f.b() != 0 ? 1 : 0);
  m.e.assign(m.rows * m.cols, 0);
  for (std::size_t j = 0; j < f.terms().size(); ++j) {
    m.at(0, j) = 1;
    for (unsigned i = 0; i < f.n_vars(); ++i)
      m.at(i + 1, j) = reduce_exponent(f.terms()[j].expo[i], n1);
  }
  if (f.b() != 0) m.at(0, m.cols - 1) = 1;
  return m;
}

inline AugMatrix augmented_degree_matrix(const TriangularPoly& f) {
  return augmented_degree_matrix(f.to_sparse());
}

/// f_k(x_1..x_k) = f(x_1..x_k, 0, ..., 0): for a triangular polynomial the
/// positive diagonal exponents kill exactly terms k+1..n, so the truncation
/// keeps columns 1..k and the same constant.
inline TriangularPoly truncate(const TriangularPoly& f, unsigned k) {
  if (k < 1 || k > f.n()) fail("bad_index", "truncation level out of range");
  std::vector<std::uint64_t> coeffs(f.coeffs().begin(), f.coeffs().begin() + k);
  std::vector<std::vector<Int>> expo(f.expo_columns().begin(),
                                     f.expo_columns().begin() + k);
  return TriangularPoly(f.field(), std::move(coeffs), f.b(), std::move(expo));
}

/// Exact evaluation. Exponents reduce mod q-1 only for nonzero bases;
/// 0^d = 0 for d > 0 and 0^0 = 1.
inline std::uint64_t evaluate_code(const SparsePoly& f,
                                   const std::vector<std::uint64_t>& point) {
  if (point.size() != f.n_vars()) fail("arity_mismatch", "point arity mismatch");
  const FieldSpec& F = f.field();
  std::uint64_t acc = F.neg(f.b());
  for (const Term& t : f.terms()) {
    std::uint64_t val = t.coeff;
    for (unsigned i = 0; i < f.n_vars() && val != 0; ++i) {
      if (t.expo[i] == 0) continue;
      val = F.mul(val, F.pow(point[i], t.expo[i]));
    }
    acc = F.add(acc, val);
  }
  return acc;
}

inline FieldElement evaluate(const SparsePoly& f,
                             const std::vector<FieldElement>& point) {
  std::vector<std::uint64_t> codes;
  codes.reserve(point.size());
  for (const FieldElement& x : point) {
    if (!x.field().same_as(f.field()))
      fail("field_mismatch", "evaluation point from a different field");
    codes.push_back(x.code());
  }
  return FieldElement(f.field(), evaluate_code(f, codes));
}

}  // namespace triroots
