// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triroots/errors.hpp"
#include "triroots/numeric.hpp"
#include "triroots/oracle.hpp"
#include "triroots/polyform.hpp"
#include "triroots/quadring.hpp"
#include "triroots/starequiv.hpp"

namespace triroots {

enum class BClass { zero, square, nonsquare };

inline int eta_of(BClass b) { return b == BClass::square ? 1 : b == BClass::nonsquare ? -1 : 0; }

/// Prefix square/nonsquare profile of a coefficient vector: r(k) counts
/// squares among a_1..a_k, s(k) counts nonsquares; plus the class of b.
struct RSProfile {
  std::vector<unsigned> r;  // r[k-1] = r(k)
  std::vector<unsigned> s;
  BClass b_class = BClass::zero;
};

inline RSProfile rs_profile(const TriangularPoly& f) {
  const FieldSpec& F = f.field();
  if (F.q() % 2 == 0) fail("even_q", "square classes require odd q");
  RSProfile out;
  unsigned r = 0, s = 0;
  for (std::uint64_t a : f.coeffs()) {
    (F.quadratic_character(a) == 1 ? r : s) += 1;
    out.r.push_back(r);
    out.s.push_back(s);
  }
  int eta_b = f.b() == 0 ? 0 : F.quadratic_character(f.b());
  out.b_class = eta_b == 0 ? BClass::zero : eta_b == 1 ? BClass::square : BClass::nonsquare;
  return out;
}

/// N* of the k-variable linear diagonal polynomial:
/// ((q-1)^k - (-1)^k)/q, plus (-1)^k when b = 0. Always an integer.
inline Int nstar_linear_gk(unsigned k, std::uint64_t q, bool b_zero) {
  if (k == 0) fail("bad_index", "k must be >= 1");
  Int v = (int_pow_u64(q - 1, k) - parity_sign(k)) / Int(q);
  if (b_zero) v += parity_sign(k);
  return v;
}

/// Root count of a_1 x_1^2 + ... + a_n x_n^2 = b over F_q^n, branching on the
/// parity of n and on b, from the quadratic character classes of the
/// coefficients only.
inline Int quadratic_form_count(const std::vector<int>& coeff_classes,
                                BClass b_class, std::uint64_t q) {
  if (q % 2 == 0) fail("even_q", "quadratic form counts require odd q");
  unsigned n = static_cast<unsigned>(coeff_classes.size());
  if (n == 0) fail("bad_index", "need at least one variable");
  int eta_prod = 1;
  for (int c : coeff_classes) eta_prod *= c;
  int eps = ((q - 1) / 2) % 2 == 0 ? 1 : -1;  // eta(-1)
  bool b_zero = b_class == BClass::zero;
  if (n % 2 == 0) {
    int sign = (eps == -1 && (n / 2) % 2 == 1 ? -1 : 1) * eta_prod;  // eta((-1)^{n/2}) * eta_prod
    if (!b_zero) return int_pow_u64(q, n - 1) - sign * int_pow_u64(q, (n - 2) / 2);
    return int_pow_u64(q, n - 1) +
           sign * (int_pow_u64(q, n / 2) - int_pow_u64(q, (n - 2) / 2));
  }
  if (b_zero) return int_pow_u64(q, n - 1);
  int sign = (eps == -1 && ((n - 1) / 2) % 2 == 1 ? -1 : 1) * eta_prod * eta_of(b_class);
  return int_pow_u64(q, n - 1) + sign * int_pow_u64(q, (n - 1) / 2);
}

/// Explicit N(g_{i,j}) for a quadratic diagonal form with i square and j
/// nonsquare coefficients, with the sign routed through the parities of
/// (q-1)/2 and i+j (never fractional exponents). Extends consistently to
/// (i, j) = (0, 0): 1 if b = 0 (empty equation) and 0 otherwise.
inline Int n_gij(unsigned i, unsigned j, std::uint64_t q, BClass b_class) {
  if (q % 2 == 0) fail("even_q", "quadratic counts require odd q");
  unsigned k = i + j;
  if (k == 0) return b_class == BClass::zero ? 1 : 0;
  int eps = ((q - 1) / 2) % 2 == 0 ? 1 : -1;
  auto eps_pow = [&](unsigned e) { return (eps == -1 && e % 2 == 1) ? -1 : 1; };
  bool b_zero = b_class == BClass::zero;
  if (k % 2 == 0) {
    int sign = parity_sign(j) * eps_pow(k / 2);
    if (!b_zero) return int_pow_u64(q, k - 1) - sign * int_pow_u64(q, (k - 2) / 2);
    return int_pow_u64(q, k - 1) +
           sign * (int_pow_u64(q, k / 2) - int_pow_u64(q, (k - 2) / 2));
  }
  if (b_zero) return int_pow_u64(q, k - 1);
  int sign = parity_sign(j) * eps_pow((k - 1) / 2) * eta_of(b_class);
  return int_pow_u64(q, k - 1) + sign * int_pow_u64(q, (k - 1) / 2);
}

/// N*(g_{r,s}) by double binomial inversion over the explicit N(g_{i,j}).
inline Int nstar_gk_inversion(unsigned r, unsigned s, std::uint64_t q,
                              BClass b_class) {
  if (r + s == 0) fail("bad_index", "r + s must be >= 1");
  Int total = 0;
  for (unsigned i = 0; i <= r; ++i)
    for (unsigned j = 0; j <= s; ++j)
      total += parity_sign(r + s + i + j) * binomial(r, i) * binomial(s, j) *
               n_gij(i, j, q, b_class);
  return total;
}

/// N*(g_{r,s}) from the closed zeta expressions, evaluated exactly in
/// Q[tau]/(tau^2 -+ q):
///   b != 0: (q-1)^k/q - (z1^r z2^s + z2^r z1^s)/(2q)
///                     + eta(b) (z1^r z2^s - z2^r z1^s)/(2 tau)
///   b  = 0: (q-1)^k/q + (q-1)(z1^r z2^s + z2^r z1^s)/(2q)
/// The b = 0 branch carries a plus sign: expanding the inversion sum into
/// (1 +- tau)^r (1 -+ tau)^s geometric parts forces it, and the minus variant
/// already fails integrality at r=1, s=0, q=3.
inline QuadRingNumber nstar_gk_closed_ring(unsigned r, unsigned s,
                                           std::uint64_t q, BClass b_class,
                                           const ZetaPair& zetas) {
  if (r + s == 0) fail("bad_index", "r + s must be >= 1");
  unsigned k = r + s;
  const Int& t = zetas.tau_sq;
  QuadRingNumber first = zetas.z1.pow(r) * zetas.z2.pow(s);
  QuadRingNumber second = zetas.z2.pow(r) * zetas.z1.pow(s);
  QuadRingNumber sum = first + second;
  QuadRingNumber val =
      QuadRingNumber::rational(Rat(int_pow_u64(q - 1, k), Int(q)), t);
  if (b_class == BClass::zero) {
    val = val + sum.scale(Rat(Int(q) - 1, 2 * Int(q)));
  } else {
    val = val - sum.div_rat(Rat(2 * Int(q)));
    QuadRingNumber diff = first - second;
    val = val + diff.div_tau().div_rat(2).scale(Rat(eta_of(b_class)));
  }
  return val;
}

inline Int nstar_gk_closed(unsigned r, unsigned s, std::uint64_t q,
                           BClass b_class, const ZetaPair& zetas) {
  Int out = nstar_gk_closed_ring(r, s, q, b_class, zetas).to_int();
  if (out < 0 || out > int_pow_u64(q - 1, r + s))
    fail("non_integral_result", "N* outside [0, (q-1)^k]");
  return out;
}

inline Int nstar_gk_closed(unsigned r, unsigned s, std::uint64_t q,
                           BClass b_class) {
  return nstar_gk_closed(r, s, q, b_class, zeta_constants(q));
}

/// The decomposition of N(f) over the first vanishing coordinate, valid for
/// fully triangular f:
///   N(f) = [b = 0] q^{n-1} + N*(g_n) + sum_{k<n} N*(g_k) q^{n-k-1}.
inline Int assemble_n_from_parts(std::uint64_t q, unsigned n, bool b_zero,
                                 const std::vector<Int>& nstar_per_k) {
  if (nstar_per_k.size() != n) fail("dimension_mismatch", "need N* for k = 1..n");
  Int total = b_zero ? int_pow_u64(q, n - 1) : Int(0);
  total += nstar_per_k[n - 1];
  for (unsigned k = 1; k < n; ++k)
    total += nstar_per_k[k - 1] * int_pow_u64(q, n - k - 1);
  return total;
}

inline Int assemble_N(const TriangularPoly& f,
                      const std::vector<Int>& nstar_per_k) {
  if (!f.fully_triangular())
    fail("not_fully_triangular",
         "the decomposition identity requires a fully triangular polynomial");
  return assemble_n_from_parts(f.field().q(), f.n(), f.b() == 0, nstar_per_k);
}

/// N(f) for fully triangular f totally *-equivalent to a linear polynomial:
/// (q^n - (-1)^n)/(q+1) if b != 0, (2q^n + (-1)^n (q-1))/(q+1) if b = 0.
inline Int linear_main_count(unsigned n, std::uint64_t q, bool b_zero) {
  if (n == 0) fail("bad_index", "n must be >= 1");
  if (!b_zero) return (int_pow_u64(q, n) - parity_sign(n)) / (Int(q) + 1);
  return (2 * int_pow_u64(q, n) + parity_sign(n) * (Int(q) - 1)) / (Int(q) + 1);
}

/// N(f) for fully triangular f totally *-equivalent to a quadratic diagonal
/// polynomial, from the direct closed expression; cross-checked against the
/// assembled per-level sum, which must agree identically.
inline Int quadratic_main_count(const RSProfile& profile, unsigned n,
                                std::uint64_t q, const ZetaPair& zetas) {
  if (q % 2 == 0) fail("even_q", "quadratic main theorem requires odd q");
  if (profile.r.size() != n || n == 0)
    fail("dimension_mismatch", "profile must cover k = 1..n");
  const Int& t = zetas.tau_sq;

  auto S = [&](unsigned k) {
    return zetas.z1.pow(profile.r[k - 1]) * zetas.z2.pow(profile.s[k - 1]) +
           zetas.z2.pow(profile.r[k - 1]) * zetas.z1.pow(profile.s[k - 1]);
  };
  auto T = [&](unsigned k) {
    return zetas.z1.pow(profile.r[k - 1]) * zetas.z2.pow(profile.s[k - 1]) -
           zetas.z2.pow(profile.r[k - 1]) * zetas.z1.pow(profile.s[k - 1]);
  };

  QuadRingNumber acc = QuadRingNumber::integer(0, t);
  if (profile.b_class == BClass::zero) {
    acc = acc + QuadRingNumber::rational(Rat(int_pow_u64(q, n - 1)), t);
    acc = acc + QuadRingNumber::rational(Rat(int_pow_u64(q, n - 1) * (Int(q) - 1), Int(q)), t);
    acc = acc + S(n).scale(Rat(Int(q) - 1, 2 * Int(q)));
    for (unsigned k = 1; k < n; ++k)
      acc = acc + S(k).scale(Rat((Int(q) - 1) * int_pow_u64(q, n - k - 1), 2 * Int(q)));
  } else {
    Rat eta_b(eta_of(profile.b_class));
    acc = acc + QuadRingNumber::rational(Rat(int_pow_u64(q, n - 1) * (Int(q) - 1), Int(q)), t);
    acc = acc - S(n).div_rat(Rat(2 * Int(q)));
    acc = acc + T(n).div_tau().div_rat(2).scale(eta_b);
    for (unsigned k = 1; k < n; ++k) {
      Rat w(int_pow_u64(q, n - k - 1));
      acc = acc - S(k).scale(w).div_rat(Rat(2 * Int(q)));
      acc = acc + T(k).div_tau().div_rat(2).scale(eta_b * w);
    }
  }
  Int direct = acc.to_int();

  // Independent route: assemble the per-level closed N* values.
  std::vector<Int> nstar(n);
  for (unsigned k = 1; k <= n; ++k)
    nstar[k - 1] = nstar_gk_closed(profile.r[k - 1], profile.s[k - 1], q,
                                   profile.b_class, zetas);
  Int assembled = assemble_n_from_parts(q, n, profile.b_class == BClass::zero, nstar);
  if (direct != assembled)
    fail("non_integral_result",
         "quadratic main formula disagrees with the assembled per-level sum");
  return direct;
}

inline Int quadratic_main_count(const RSProfile& profile, unsigned n,
                                std::uint64_t q) {
  return quadratic_main_count(profile, n, q, zeta_constants(q));
}

enum class CountMethod { linear_closed, quadratic_closed, oracle, charsum };

inline const char* to_string(CountMethod m) {
  switch (m) {
    case CountMethod::linear_closed: return "linear_closed";
    case CountMethod::quadratic_closed: return "quadratic_closed";
    case CountMethod::oracle: return "oracle";
    case CountMethod::charsum: return "charsum";
  }
  return "?";
}

struct CountReport {
  std::optional<Int> N;            // absent only when the oracle was declined
  std::vector<Int> n_star_per_k;   // N*(f_k) for k = 1..n
  CountMethod method = CountMethod::oracle;
  std::optional<Certificate> certificate;
  std::string note;
  double elapsed_ms = 0;
};

struct CountOptions {
  bool run_oracle_fallback = true;
  OracleOptions oracle;
};

/// Dispatcher over the closed-form paths: try the linear criterion, then the
/// quadratic one, else fall back to exhaustive enumeration. No closed N*
/// formula exists for diagonal exponents e >= 3, so no other targets are
/// attempted here.
inline CountReport count_roots(const TriangularPoly& f,
                               const CountOptions& opts = {}) {
  if (!f.fully_triangular())
    fail("not_fully_triangular", "count_roots requires a fully triangular polynomial");
  auto started = std::chrono::steady_clock::now();
  CountReport rep;
  std::uint64_t q = f.field().q();
  unsigned n = f.n();
  bool b_zero = f.b() == 0;

  if (linear_criterion(f)) {
    rep.method = CountMethod::linear_closed;
    for (unsigned k = 1; k <= n; ++k)
      rep.n_star_per_k.push_back(nstar_linear_gk(k, q, b_zero));
    Int assembled = assemble_N(f, rep.n_star_per_k);
    Int single = linear_main_count(n, q, b_zero);
    if (assembled != single)
      fail("non_integral_result", "linear closed form disagrees with assembly");
    rep.N = single;
    rep.certificate = diagonal_equivalence(f, std::vector<Int>(n, Int(1)));
  } else if (quadratic_criterion(f)) {
    rep.method = CountMethod::quadratic_closed;
    RSProfile profile = rs_profile(f);
    for (unsigned k = 1; k <= n; ++k)
      rep.n_star_per_k.push_back(nstar_gk_closed(profile.r[k - 1], profile.s[k - 1],
                                                 q, profile.b_class));
    rep.N = quadratic_main_count(profile, n, q);
    rep.certificate = diagonal_equivalence(f, std::vector<Int>(n, Int(2)));
  } else {
    rep.method = CountMethod::oracle;
    rep.note = "neither the linear nor the quadratic criterion applies; "
               "falling back to exhaustive enumeration";
    if (opts.run_oracle_fallback) {
      SparsePoly sparse = f.to_sparse();
      BruteForceResult whole = brute_force_count(sparse, opts.oracle);
      rep.N = whole.n;
      for (unsigned k = 1; k <= n; ++k) {
        SparsePoly fk = truncate(f, k).to_sparse();
        rep.n_star_per_k.push_back(brute_force_count(fk, opts.oracle).n_star);
      }
    }
  }

  if (rep.N && (*rep.N < 0 || *rep.N > int_pow_u64(q, n)))
    fail("non_integral_result", "N outside [0, q^n]");
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return rep;
}

}  // namespace triroots
