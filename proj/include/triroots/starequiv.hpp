// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triroots/errors.hpp"
#include "triroots/modring.hpp"
#include "triroots/numeric.hpp"
#include "triroots/polyform.hpp"

namespace triroots {

enum class EquivStatus { not_valid, star_equivalent, totally_star_equivalent };

inline const char* to_string(EquivStatus s) {
  switch (s) {
    case EquivStatus::not_valid: return "not_valid";
    case EquivStatus::star_equivalent: return "star_equivalent";
    case EquivStatus::totally_star_equivalent: return "totally_star_equivalent";
  }
  return "?";
}

/// A verified witness of total *-equivalence between a triangular f and the
/// diagonal polynomial with exponents target_exponents (same coefficients and
/// constant as f). M is the (n+1)x(n+1) matrix over Z_{q-1} with
/// M * D~_target = D~_f; its entries satisfy d_{i,j} = m_{i,j} e_j.
struct Certificate {
  ResidueMatrix M;
  bool total = false;
  std::vector<Int> target_exponents;
};

/// Build the diagonal polynomial a_1 x_1^{e_1} + ... + a_n x_n^{e_n} - b with
/// f's coefficient vector.
inline TriangularPoly diagonal_target(const TriangularPoly& f,
                                      const std::vector<Int>& e) {
  std::vector<std::vector<Int>> expo(f.n());
  for (unsigned j = 0; j < f.n(); ++j) {
    expo[j].assign(j + 1, Int(0));
    expo[j][j] = e[j];
  }
  return TriangularPoly(f.field(), f.coeffs(), f.b(), std::move(expo));
}

inline bool same_coefficient_vector(const TriangularPoly& f,
                                    const TriangularPoly& g) {
  return f.coeffs() == g.coeffs() && f.b() == g.b();
}

/// Check a claimed row-equivalence certificate: M * D~_f = D~_g (mod q-1)
/// with M invertible proves f and g *-equivalent; if additionally every
/// leading principal submatrix M_k (k = 1..n-1, size (k+1)x(k+1)) is
/// invertible, the equivalence holds at every truncation level.
inline EquivStatus verify_certificate(const TriangularPoly& f,
                                      const TriangularPoly& g,
                                      const ResidueMatrix& M) {
  if (!f.field().same_as(g.field()))
    fail("dimension_mismatch", "f and g live in different fields");
  if (f.n() != g.n()) fail("dimension_mismatch", "f and g have different arity");
  std::uint64_t n1 = f.field().q() - 1;
  if (M.rows != f.n() + 1 || M.cols != f.n() + 1 || M.modulus != n1)
    fail("dimension_mismatch", "certificate matrix must be (n+1)x(n+1) mod q-1");

  if (!same_coefficient_vector(f, g)) return EquivStatus::not_valid;
  ResidueMatrix df = augmented_degree_matrix(f).residues();
  ResidueMatrix dg = augmented_degree_matrix(g).residues();
  if (df.cols != dg.cols) return EquivStatus::not_valid;
  if (!(mat_mul(M, df) == dg)) return EquivStatus::not_valid;
  if (!is_invertible(M)) return EquivStatus::not_valid;
  for (unsigned k = 1; k + 1 < f.n() + 1; ++k)
    if (!is_invertible(M.leading_principal(k + 1)))
      return EquivStatus::star_equivalent;
  return EquivStatus::totally_star_equivalent;
}

/// Sufficient criterion for total *-equivalence of f to the diagonal target
/// with exponents e: (i) each d_{j,j} is a unit multiple of e_j mod q-1, and
/// (ii) gcd(d_{j,j}, q-1) divides every d_{i,j} above it. On success the
/// witness matrix is assembled from the smallest solutions of
/// d_{i,j} = m e_j (mod q-1). A nullopt means the criterion is inconclusive,
/// not that the polynomials are inequivalent.
inline std::optional<Certificate> diagonal_equivalence(
    const TriangularPoly& f, const std::vector<Int>& e) {
  if (e.size() != f.n())
    fail("dimension_mismatch", "need one target exponent per variable");
  for (const Int& ej : e)
    if (ej <= 0) fail("bad_target_exponent", "target exponents must be positive");

  std::uint64_t n1 = f.field().q() - 1;
  unsigned n = f.n();
  ResidueMatrix M(n1, n + 1, n + 1);
  M.at(0, 0) = 1 % n1;
  for (unsigned j = 1; j <= n; ++j) {
    std::uint64_t djj = mod_u64(f.d(j, j), n1);
    std::uint64_t ej = mod_u64(e[j - 1], n1);
    auto unit = unit_ratio(djj, ej, n1);
    if (!unit) return std::nullopt;
    M.at(j, j) = *unit;
    Int g = boost::multiprecision::gcd(f.d(j, j), Int(n1));
    for (unsigned i = 1; i < j; ++i) {
      if (f.d(i, j) % g != 0) return std::nullopt;
      auto mij = solve_linear_min(mod_u64(f.d(i, j), n1), ej, n1);
      if (!mij) return std::nullopt;  // cannot happen once (ii) holds
      M.at(i, j) = *mij;
    }
  }
  return Certificate{std::move(M), true, e};
}

/// Corollary for a linear diagonal target: gcd(d_{j,j}, q-1) = 1 for all j.
inline bool linear_criterion(const TriangularPoly& f) {
  Int n1(f.field().q() - 1);
  for (unsigned j = 1; j <= f.n(); ++j)
    if (boost::multiprecision::gcd(f.d(j, j), n1) != 1) return false;
  return true;
}

/// Corollary for a quadratic diagonal target: q odd, every d_{j,j} a unit
/// multiple of 2 mod q-1, and every off-diagonal exponent even.
inline bool quadratic_criterion(const TriangularPoly& f) {
  std::uint64_t q = f.field().q();
  if (q % 2 == 0) return false;
  std::uint64_t n1 = q - 1;
  for (unsigned j = 1; j <= f.n(); ++j) {
    if (!unit_ratio(mod_u64(f.d(j, j), n1), 2 % n1, n1)) return false;
    for (unsigned i = 1; i < j; ++i)
      if (f.d(i, j) % 2 != 0) return false;
  }
  return true;
}

/// Complete *-equivalence decision: equal coefficient vectors and equal row
/// spans of the augmented degree matrices over Z_{q-1}, the latter decided by
/// comparing Howell forms. Row-span equality coincides with solution-set
/// equality of D~ v = 0 because Z_{q-1} is quasi-Frobenius (double
/// annihilators close up).
inline bool star_equivalent_general(const SparsePoly& f, const SparsePoly& g) {
  if (!f.field().same_as(g.field())) return false;
  if (f.n_vars() != g.n_vars() || f.terms().size() != g.terms().size()) return false;
  if (f.b() != g.b()) return false;
  for (std::size_t j = 0; j < f.terms().size(); ++j)
    if (f.terms()[j].coeff != g.terms()[j].coeff) return false;
  ResidueMatrix hf = howell_form(augmented_degree_matrix(f).residues());
  ResidueMatrix hg = howell_form(augmented_degree_matrix(g).residues());
  return hf == hg;
}

inline bool star_equivalent_general(const TriangularPoly& f,
                                    const TriangularPoly& g) {
  return star_equivalent_general(f.to_sparse(), g.to_sparse());
}

/// Best available complete test for total *-equivalence of triangular pairs:
/// the Howell comparison applied at every truncation level. May be slow for
/// large n; the certificate route is preferred when it applies.
inline bool totally_star_equivalent_general(const TriangularPoly& f,
                                            const TriangularPoly& g) {
  if (f.n() != g.n()) return false;
  for (unsigned k = 1; k <= f.n(); ++k)
    if (!star_equivalent_general(truncate(f, k), truncate(g, k))) return false;
  return true;
}

}  // namespace triroots
