// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "triroots/counting.hpp"
#include "triroots/errors.hpp"
#include "triroots/ffield.hpp"
#include "triroots/oracle.hpp"
#include "triroots/polyform.hpp"
#include "triroots/starequiv.hpp"

namespace triroots {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double elapsed_ms = 0;
  double limit_ms = 0;  // 0 = no runtime bound
  std::string detail;
};

struct SelftestOptions {
  bool flip_zeta2 = false;  // dev-only fault injection; must break criterion 5
};

namespace selftest_detail {

inline std::unique_ptr<FieldSpec> make_field(std::uint64_t q) {
  auto factors = factorize_u64(q);
  if (factors.size() != 1) fail("non_prime", "q must be a prime power");
  return std::make_unique<FieldSpec>(factors[0].first, factors[0].second);
}

inline std::uint64_t rnd(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

enum class Flavor { linear, quadratic, any };

inline TriangularPoly random_fully_triangular(std::mt19937_64& rng,
                                              const FieldSpec& F, unsigned n,
                                              std::uint64_t max_expo,
                                              Flavor flavor, bool b_zero) {
  std::uint64_t q = F.q(), n1 = q - 1;
  std::vector<std::vector<Int>> expo(n);
  for (unsigned j = 0; j < n; ++j) {
    expo[j].resize(j + 1);
    for (unsigned i = 0; i < j; ++i) {
      std::uint64_t d = rnd(rng, 1, max_expo);
      if (flavor == Flavor::quadratic) d = std::max<std::uint64_t>(2, d - d % 2);
      expo[j][i] = Int(d);
    }
    for (;;) {
      std::uint64_t d = rnd(rng, 1, max_expo);
      bool ok = false;
      switch (flavor) {
        case Flavor::linear: ok = gcd_u64(d, n1) == 1; break;
        case Flavor::quadratic: ok = unit_ratio(d % n1, 2 % n1, n1).has_value(); break;
        case Flavor::any: ok = true; break;
      }
      if (ok) {
        expo[j][j] = Int(d);
        break;
      }
    }
  }
  std::vector<std::uint64_t> coeffs(n);
  for (unsigned j = 0; j < n; ++j) coeffs[j] = rnd(rng, 1, q - 1);
  std::uint64_t b = b_zero ? 0 : rnd(rng, 1, q - 1);
  return TriangularPoly(F, std::move(coeffs), b, std::move(expo));
}

inline SparsePoly random_sparse(std::mt19937_64& rng, const FieldSpec& F,
                                unsigned n, unsigned m, std::uint64_t max_expo,
                                bool b_zero) {
  std::vector<Term> terms;
  while (terms.size() < m) {
    Term t;
    t.coeff = rnd(rng, 1, F.q() - 1);
    bool all_zero = true;
    for (unsigned i = 0; i < n; ++i) {
      std::uint64_t d = rnd(rng, 0, max_expo);
      if (d > 0) all_zero = false;
      t.expo.push_back(Int(d));
    }
    if (all_zero) continue;
    bool dup = false;
    for (const Term& u : terms) dup = dup || u.expo == t.expo;
    if (dup) continue;
    terms.push_back(std::move(t));
  }
  std::uint64_t b = b_zero ? 0 : rnd(rng, 1, F.q() - 1);
  return SparsePoly(F, n, std::move(terms), b);
}

inline std::uint64_t smallest_nonsquare(const FieldSpec& F) {
  for (std::uint64_t c = 1; c < F.q(); ++c)
    if (F.quadratic_character(c) == -1) return c;
  fail("internal", "no nonsquare found");
}

template <class T>
inline bool expect_eq(std::ostringstream& log, const char* label, const T& got,
                      const T& want) {
  if (got == want) return true;
  log << label << ": got " << got << ", want " << want << "; ";
  return false;
}

}  // namespace selftest_detail

/// Run the full reproduction/validation suite at desk scale. Each criterion
/// is independent; failures carry a short diagnostic.
inline std::vector<CriterionResult> run_acceptance(const SelftestOptions& opts = {}) {
  using namespace selftest_detail;
  std::vector<CriterionResult> results;

  auto run = [&](int id, const std::string& name, double limit_ms,
                 const std::function<bool(std::ostringstream&)>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    r.limit_ms = limit_ms;
    std::ostringstream log;
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.passed = body(log);
    } catch (const std::exception& e) {
      r.passed = false;
      log << "exception: " << e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    if (limit_ms > 0 && r.elapsed_ms > limit_ms) {
      r.passed = false;
      log << "runtime " << r.elapsed_ms << " ms over the " << limit_ms << " ms limit; ";
    }
    r.detail = log.str();
    results.push_back(std::move(r));
  };

  // 1. F_31 reproduction.
  run(1, "F31 reproduction: N(f)=1861, N*(f)=870, N(g)=961, charsum, linear path",
      5000, [&](std::ostringstream& log) {
        FieldSpec F(31, 1);
        TriangularPoly f(F, {11, 5, 12}, 0,
                         {{Int(13)}, {Int(21), Int(19)}, {Int(2), Int(3), Int(17)}});
        TriangularPoly g(F, {11, 5, 12}, 0,
                         {{Int(1)}, {Int(0), Int(1)}, {Int(0), Int(0), Int(1)}});
        bool ok = true;
        BruteForceResult bf = brute_force_count(f.to_sparse());
        ok &= expect_eq(log, "N(f)", bf.n, Int(1861));
        ok &= expect_eq(log, "N*(f)", bf.n_star, Int(870));
        BruteForceResult bg = brute_force_count(g.to_sparse());
        ok &= expect_eq(log, "N(g)", bg.n, Int(961));
        ok &= expect_eq(log, "N*(g)", bg.n_star, Int(870));
        ok &= expect_eq(log, "charsum N*(f)", charsum_nstar(f.to_sparse()), Int(870));
        CountReport rep = count_roots(f);
        ok &= expect_eq(log, "method", std::string(to_string(rep.method)),
                        std::string("linear_closed"));
        ok &= expect_eq(log, "closed N(f)", *rep.N, Int(1861));
        return ok;
      });

  // 2. F_10007 reproduction (oracle infeasible; closed forms must agree).
  run(2, "F10007 reproduction: N*(g_k) = 1, 10005, 100110031; N(f) = 100130043",
      0, [&](std::ostringstream& log) {
        FieldSpec F(10007, 1);
        TriangularPoly f(F, {1, 1, 1}, F.from_int(-7001),
                         {{Int(1001)},
                          {Int(2001), Int(3001)},
                          {Int(4001), Int(5001), Int(6001)}});
        bool ok = true;
        CountReport rep = count_roots(f);
        ok &= expect_eq(log, "method", std::string(to_string(rep.method)),
                        std::string("linear_closed"));
        ok &= expect_eq(log, "N*(g_1)", rep.n_star_per_k[0], Int(1));
        ok &= expect_eq(log, "N*(g_2)", rep.n_star_per_k[1], Int(10005));
        ok &= expect_eq(log, "N*(g_3)", rep.n_star_per_k[2], Int(100110031));
        ok &= expect_eq(log, "N(f)", *rep.N, Int(100130043));
        // Single-shot theorem vs term-for-term assembly.
        Int assembled = assemble_N(f, rep.n_star_per_k);
        Int single = linear_main_count(3, 10007, false);
        ok &= expect_eq(log, "assembled", assembled, single);
        ok &= expect_eq(log, "certificate", rep.certificate.has_value(), true);
        return ok;
      });

  // 3. F_5 *-equivalence with distinct root sets.
  run(3, "F5 pair: *-equivalent, equal N*, distinct nonzero root sets", 0,
      [&](std::ostringstream& log) {
        FieldSpec F(5, 1);
        SparsePoly f(F, 2, {{1, {Int(2), Int(3)}}, {1, {Int(1), Int(2)}}}, 0);
        SparsePoly g(F, 2, {{1, {Int(1), Int(1)}}, {1, {Int(3), Int(2)}}}, 0);
        bool ok = expect_eq(log, "star_equivalent", star_equivalent_general(f, g), true);
        auto rf = root_set(f, /*nonzero_only=*/true);
        auto rg = root_set(g, /*nonzero_only=*/true);
        ok &= expect_eq(log, "cardinality", rf.size(), rg.size());
        if (rf == rg) {
          log << "root sets unexpectedly equal; ";
          ok = false;
        }
        return ok;
      });

  // 4. F_7 certificate + restricted-form impossibility.
  run(4, "F7 certificate: totally *-equivalent, no restricted-form witness", 1000,
      [&](std::ostringstream& log) {
        FieldSpec F(7, 1);
        TriangularPoly f(F, {1, 1}, 0, {{Int(1)}, {Int(3), Int(5)}});
        TriangularPoly g(F, {1, 1}, 0, {{Int(2)}, {Int(4), Int(1)}});
        ResidueMatrix M = ResidueMatrix::from_rows(6, {{1, 0, 0}, {1, 1, 0}, {0, 0, 5}});
        bool ok = expect_eq(log, "status",
                            std::string(to_string(verify_certificate(f, g, M))),
                            std::string("totally_star_equivalent"));
        // Exhaustive scan over matrices of the restricted upper-triangular
        // form (unit diagonal entries, first row (1,0,0)) mod 6.
        ResidueMatrix df = augmented_degree_matrix(f).residues();
        ResidueMatrix dg = augmented_degree_matrix(g).residues();
        unsigned hits = 0;
        for (std::uint64_t m11 = 0; m11 < 6; ++m11)
          for (std::uint64_t m12 = 0; m12 < 6; ++m12)
            for (std::uint64_t m22 = 0; m22 < 6; ++m22) {
              ResidueMatrix N = ResidueMatrix::from_rows(
                  6, {{1, 0, 0}, {0, m11, m12}, {0, 0, m22}});
              if (!is_invertible(N)) continue;
              if (mat_mul(N, df) == dg) ++hits;
            }
        ok &= expect_eq(log, "restricted witnesses", hits, 0u);
        return ok;
      });

  // 5. Dual-path identity (closed zeta form vs binomial inversion).
  run(5, "dual-path identity: closed N* == inversion N*, r+s <= 8", 1000,
      [&](std::ostringstream& log) {
        bool ok = true;
        for (std::uint64_t q : {3, 5, 7, 9, 11, 13}) {
          ZetaPair zetas = zeta_constants(q);
          if (opts.flip_zeta2) zetas.z2 = -zetas.z2;
          for (unsigned r = 0; r <= 8; ++r)
            for (unsigned s = 0; r + s <= 8; ++s) {
              if (r + s == 0) continue;
              for (BClass b : {BClass::zero, BClass::square, BClass::nonsquare}) {
                Int inv = nstar_gk_inversion(r, s, q, b);
                Int closed = nstar_gk_closed(r, s, q, b, zetas);
                if (inv != closed) {
                  log << "q=" << q << " r=" << r << " s=" << s << " b="
                      << static_cast<int>(b) << ": closed " << closed
                      << " != inversion " << inv << "; ";
                  ok = false;
                }
              }
            }
        }
        return ok;
      });

  // 6. Oracle vs closed form on random criterion instances.
  run(6, "oracle vs closed form: 200+ linear and 200+ quadratic instances", 60000,
      [&](std::ostringstream& log) {
        std::mt19937_64 rng(0x5eed0006);
        bool ok = true;
        unsigned linear_done = 0, quadratic_done = 0;
        std::vector<std::uint64_t> qs{3, 5, 7, 9, 11, 13};
        std::vector<std::unique_ptr<FieldSpec>> fields;
        for (std::uint64_t q : qs) fields.push_back(make_field(q));
        for (unsigned round = 0; round < 40 && ok; ++round) {
          for (std::size_t fi = 0; fi < fields.size() && ok; ++fi) {
            const FieldSpec& F = *fields[fi];
            for (Flavor flavor : {Flavor::linear, Flavor::quadratic}) {
              unsigned n = static_cast<unsigned>(rnd(rng, 1, 3));
              bool b_zero = rnd(rng, 0, 1) == 0;
              TriangularPoly f =
                  random_fully_triangular(rng, F, n, 50, flavor, b_zero);
              CountReport rep = count_roots(f);
              const char* want_method = flavor == Flavor::linear
                                            ? "linear_closed"
                                            : "quadratic_closed";
              if (std::string(to_string(rep.method)) != want_method) {
                log << "q=" << F.q() << ": method " << to_string(rep.method)
                    << " != " << want_method << "; ";
                ok = false;
                break;
              }
              Int brute = brute_force_count(f.to_sparse()).n;
              if (*rep.N != brute) {
                log << "q=" << F.q() << " n=" << n << " b_zero=" << b_zero
                    << " flavor=" << want_method << ": closed " << *rep.N
                    << " != brute " << brute << "; ";
                ok = false;
                break;
              }
              (flavor == Flavor::linear ? linear_done : quadratic_done) += 1;
            }
          }
        }
        ok &= linear_done >= 200 && quadratic_done >= 200;
        log << "linear=" << linear_done << " quadratic=" << quadratic_done;
        return ok;
      });

  // 7. Character-sum oracle vs enumeration.
  run(7, "charsum vs brute force: 100+ random sparse polynomials per field", 60000,
      [&](std::ostringstream& log) {
        std::mt19937_64 rng(0x5eed0007);
        bool ok = true;
        for (std::uint64_t q : {3, 5, 7, 9, 13}) {
          auto F = make_field(q);
          for (unsigned i = 0; i < 100 && ok; ++i) {
            unsigned n = static_cast<unsigned>(rnd(rng, 1, 3));
            unsigned m = static_cast<unsigned>(rnd(rng, 1, 4));
            bool b_zero = rnd(rng, 0, 1) == 0;
            SparsePoly f = random_sparse(rng, *F, n, m, 60, b_zero);
            Int brute = brute_force_count(f).n_star;
            Int cs = charsum_nstar(f);  // PrecisionLoss throws -> criterion fails
            if (cs != brute) {
              log << "q=" << q << " instance " << i << ": charsum " << cs
                  << " != brute " << brute << "; ";
              ok = false;
            }
          }
        }
        return ok;
      });

  // 8. Quadratic-form theorem vs enumeration.
  run(8, "quadratic form counts vs brute force, all sign patterns, n <= 4", 30000,
      [&](std::ostringstream& log) {
        bool ok = true;
        for (std::uint64_t q : {3, 5, 7, 9}) {
          auto F = make_field(q);
          std::uint64_t ns = smallest_nonsquare(*F);
          for (unsigned n = 1; n <= 4 && ok; ++n) {
            for (unsigned mask = 0; mask < (1u << n) && ok; ++mask) {
              std::vector<int> classes(n);
              std::vector<std::uint64_t> coeffs(n);
              for (unsigned i = 0; i < n; ++i) {
                bool sq = (mask >> i) & 1;
                classes[i] = sq ? 1 : -1;
                coeffs[i] = sq ? 1 : ns;
              }
              for (BClass bc : {BClass::zero, BClass::square, BClass::nonsquare}) {
                std::uint64_t b = bc == BClass::zero ? 0
                                  : bc == BClass::square ? 1 : ns;
                std::vector<Term> terms(n);
                for (unsigned i = 0; i < n; ++i) {
                  terms[i].coeff = coeffs[i];
                  terms[i].expo.assign(n, Int(0));
                  terms[i].expo[i] = 2;
                }
                SparsePoly g(*F, n, std::move(terms), b);
                Int brute = brute_force_count(g).n;
                Int closed = quadratic_form_count(classes, bc, q);
                if (brute != closed) {
                  log << "q=" << q << " n=" << n << " mask=" << mask << " b="
                      << static_cast<int>(bc) << ": closed " << closed
                      << " != brute " << brute << "; ";
                  ok = false;
                }
              }
            }
          }
        }
        return ok;
      });

  // 9. Integrality and ranges of every quadratic-ring value.
  run(9, "integrality: zero tau-part and in-range counts across the grids", 0,
      [&](std::ostringstream& log) {
        bool ok = true;
        for (std::uint64_t q : {3, 5, 7, 9, 11, 13}) {
          ZetaPair zetas = zeta_constants(q);
          for (unsigned r = 0; r <= 8; ++r)
            for (unsigned s = 0; r + s <= 8; ++s) {
              if (r + s == 0) continue;
              for (BClass b : {BClass::zero, BClass::square, BClass::nonsquare}) {
                QuadRingNumber v = nstar_gk_closed_ring(r, s, q, b, zetas);
                if (!v.is_integral()) {
                  log << "non-integral at q=" << q << " r=" << r << " s=" << s << "; ";
                  ok = false;
                  continue;
                }
                Int value = v.to_int();
                if (value < 0 || value > int_pow_u64(q - 1, r + s)) {
                  log << "out of range at q=" << q << " r=" << r << " s=" << s << "; ";
                  ok = false;
                }
              }
            }
          // Main-theorem values stay inside [0, q^n].
          std::mt19937_64 rng(0x5eed0009 + q);
          auto F = make_field(q);
          for (unsigned i = 0; i < 25; ++i) {
            unsigned n = static_cast<unsigned>(rnd(rng, 1, 4));
            TriangularPoly f = random_fully_triangular(rng, *F, n, 50,
                                                       Flavor::quadratic,
                                                       rnd(rng, 0, 1) == 0);
            RSProfile profile = rs_profile(f);
            Int N = quadratic_main_count(profile, n, q);
            if (N < 0 || N > int_pow_u64(q, n)) {
              log << "N out of range at q=" << q << " n=" << n << "; ";
              ok = false;
            }
          }
        }
        return ok;
      });

  // 10. Decomposition identity on a fixed pseudo-random corpus.
  run(10, "decomposition identity by brute force, q <= 9, n <= 3", 30000,
      [&](std::ostringstream& log) {
        std::mt19937_64 rng(0x5eed000a);
        bool ok = true;
        for (std::uint64_t q : {3, 4, 5, 7, 8, 9}) {
          auto F = make_field(q);
          for (unsigned i = 0; i < 30 && ok; ++i) {
            unsigned n = static_cast<unsigned>(rnd(rng, 1, 3));
            bool b_zero = i % 2 == 0;
            TriangularPoly f =
                random_fully_triangular(rng, *F, n, 40, Flavor::any, b_zero);
            std::vector<Int> nstar;
            for (unsigned k = 1; k <= n; ++k)
              nstar.push_back(brute_force_count(truncate(f, k).to_sparse()).n_star);
            Int lhs = brute_force_count(f.to_sparse()).n;
            Int rhs = assemble_N(f, nstar);
            if (lhs != rhs) {
              log << "q=" << q << " n=" << n << " b_zero=" << b_zero << ": N "
                  << lhs << " != assembled " << rhs << "; ";
              ok = false;
            }
          }
        }
        return ok;
      });

  return results;
}

}  // namespace triroots
