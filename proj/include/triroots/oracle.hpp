// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <set>
#include <thread>
#include <vector>

#include "triroots/errors.hpp"
#include "triroots/ffield.hpp"
#include "triroots/modring.hpp"
#include "triroots/numeric.hpp"
#include "triroots/polyform.hpp"

namespace triroots {

struct OracleOptions {
  std::uint64_t point_budget = 100'000'000;  // max q^n for full enumeration
  unsigned threads = 1;
};

struct CharsumOptions {
  std::uint64_t q_max = 64;
  std::size_t m_max = 6;  // columns of the augmented degree matrix
  double tolerance = 1e-3;
};

struct BruteForceResult {
  Int n;       // roots over F_q^n
  Int n_star;  // roots over (F_q^*)^n
};

namespace detail {

/// Point enumerator with per-term prefix-product caching: when coordinate d
/// advances, only the suffix products of terms that use variable d are
/// recomputed, so the amortized cost per point is the number of terms
/// touching the innermost variable.
class Evaluator {
 public:
  explicit Evaluator(const SparsePoly& f)
      : F_(f.field()), n_(f.n_vars()), q_(F_.q()) {
    neg_b_ = F_.neg(f.b());
    std::uint64_t n1 = q_ - 1;
    touch_.resize(n_);
    plans_.reserve(f.terms().size());
    bool tables = q_ <= kPowTableMax;
    for (const Term& t : f.terms()) {
      TermPlan plan;
      plan.coeff = t.coeff;
      for (unsigned i = 0; i < n_; ++i) {
        if (t.expo[i] == 0) continue;
        plan.vars.push_back(i);
        plan.expos.push_back(t.expo[i]);
        if (tables) {
          std::vector<std::uint64_t> tab(q_);
          std::uint64_t e = mod_u64(t.expo[i], n1);
          if (e == 0) e = n1;  // positive exponent: 0 at x=0, x^{q-1} elsewhere
          for (std::uint64_t x = 0; x < q_; ++x) tab[x] = F_.pow_u64(x, x == 0 ? 1 : e);
          plan.pow.push_back(std::move(tab));
        }
      }
      std::size_t idx = plans_.size();
      for (std::size_t slot = 0; slot < plan.vars.size(); ++slot)
        touch_[plan.vars[slot]].push_back({idx, slot});
      plans_.push_back(std::move(plan));
    }
  }

  unsigned n_vars() const { return n_; }
  std::uint64_t q() const { return q_; }

  /// Visit every root with first coordinate in [lo, hi);
  /// cb(point_codes, all_coords_nonzero).
  template <class Fn>
  void for_each_root(std::uint64_t lo, std::uint64_t hi, Fn&& cb) const {
    std::vector<std::uint64_t> point(n_, 0);
    std::vector<std::vector<std::uint64_t>> pp(plans_.size());
    for (std::size_t t = 0; t < plans_.size(); ++t) {
      pp[t].assign(plans_[t].vars.size() + 1, 0);
      pp[t][0] = plans_[t].coeff;
    }
    std::vector<std::uint64_t> sums(n_ + 1, 0);
    sums[0] = neg_b_;
    std::vector<unsigned> zeros(n_ + 1, 0);

    auto rec = [&](auto&& self, unsigned depth) -> void {
      std::uint64_t from = depth == 0 ? lo : 0;
      std::uint64_t to = depth == 0 ? hi : q_;
      for (std::uint64_t x = from; x < to; ++x) {
        point[depth] = x;
        std::uint64_t s = sums[depth];
        for (const auto& [t, slot] : touch_[depth]) {
          const TermPlan& plan = plans_[t];
          std::uint64_t powx = plan.pow.empty()
                                   ? F_.pow(x, plan.expos[slot])
                                   : plan.pow[slot][x];
          std::uint64_t v = F_.mul(pp[t][slot], powx);
          pp[t][slot + 1] = v;
          if (slot + 1 == plan.vars.size()) s = F_.add(s, v);
        }
        sums[depth + 1] = s;
        zeros[depth + 1] = zeros[depth] + (x == 0);
        if (depth + 1 == n_) {
          if (s == 0) cb(point, zeros[n_] == 0);
        } else {
          self(self, depth + 1);
        }
      }
    };
    rec(rec, 0);
  }

 private:
  static constexpr std::uint64_t kPowTableMax = 1u << 20;

  struct TermPlan {
    std::uint64_t coeff = 0;
    std::vector<unsigned> vars;                   // ascending
    std::vector<Int> expos;                       // parallel to vars
    std::vector<std::vector<std::uint64_t>> pow;  // per slot, x -> x^d
  };

  const FieldSpec& F_;
  unsigned n_;
  std::uint64_t q_;
  std::uint64_t neg_b_ = 0;
  std::vector<TermPlan> plans_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> touch_;
};

inline void check_point_budget(const SparsePoly& f, std::uint64_t budget) {
  Int total = int_pow_u64(f.field().q(), f.n_vars());
  if (total > budget)
    fail("budget_exceeded", "enumeration needs " + total.str() +
                                " points, budget is " + std::to_string(budget));
}

}  // namespace detail

/// Exhaustive N(f) and N*(f) by full enumeration of F_q^n. Deterministic;
/// the search space may be partitioned by first coordinate across threads,
/// counts merge by summation.
inline BruteForceResult brute_force_count(const SparsePoly& f,
                                          const OracleOptions& opts = {}) {
  detail::check_point_budget(f, opts.point_budget);
  detail::Evaluator ev(f);
  std::uint64_t q = ev.q();
  unsigned threads = opts.threads == 0 ? 1 : opts.threads;
  if (threads > q) threads = static_cast<unsigned>(q);

  std::vector<std::uint64_t> roots(threads, 0), nz_roots(threads, 0);
  auto worker = [&](unsigned t) {
    std::uint64_t lo = q * t / threads;
    std::uint64_t hi = q * (t + 1) / threads;
    ev.for_each_root(lo, hi, [&](const std::vector<std::uint64_t>&, bool nz) {
      ++roots[t];
      if (nz) ++nz_roots[t];
    });
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  BruteForceResult out{0, 0};
  for (unsigned t = 0; t < threads; ++t) {
    out.n += roots[t];
    out.n_star += nz_roots[t];
  }
  return out;
}

/// The explicit set of roots (codes per coordinate), optionally restricted to
/// points with all coordinates nonzero.
inline std::set<std::vector<std::uint64_t>> root_set(
    const SparsePoly& f, bool nonzero_only, const OracleOptions& opts = {}) {
  detail::check_point_budget(f, opts.point_budget);
  detail::Evaluator ev(f);
  std::set<std::vector<std::uint64_t>> out;
  ev.for_each_root(0, ev.q(), [&](const std::vector<std::uint64_t>& pt, bool nz) {
    if (!nonzero_only || nz) out.insert(pt);
  });
  return out;
}

struct GaussSum {
  std::complex<double> value;
  double error_bound = 0;
};

/// G(k) = sum over a != 0 of omega(a)^{-k} delta_p^{Tr(a)}, with omega the
/// character of order q-1 fixed by the field's generator and delta_p the
/// principal p-th root of unity. Computed by walking powers of the generator;
/// compensated (Kahan) summation.
inline GaussSum gauss_sum(std::uint64_t k, const FieldSpec& field) {
  std::uint64_t q = field.q(), n1 = q - 1, p = field.p();
  if (k >= n1) fail("bad_index", "character exponent k must lie in [0, q-2]");
  constexpr double two_pi = 6.283185307179586476925286766559;

  std::vector<std::complex<double>> unity_n(n1), unity_p(p);
  for (std::uint64_t j = 0; j < n1; ++j)
    unity_n[j] = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n1));
  for (std::uint64_t j = 0; j < p; ++j)
    unity_p[j] = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(p));

  std::complex<double> sum = 0, comp = 0;
  std::uint64_t a = 1;
  for (std::uint64_t j = 0; j < n1; ++j) {
    std::uint64_t rot = mulmod(k % n1, j, n1);
    std::uint64_t idx = rot == 0 ? 0 : n1 - rot;  // omega(g^j)^{-k}
    std::complex<double> term = unity_n[idx] * unity_p[field.trace(a)];
    std::complex<double> y = term - comp;
    std::complex<double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    a = field.mul(a, field.generator());
  }
  double eps = std::numeric_limits<double>::epsilon();
  return {sum, 8.0 * static_cast<double>(n1) * eps};
}

/// N*(f) from the character-sum formula: the sum ranges over the nullspace of
/// the augmented degree matrix mod q-1, which is enumerated directly through
/// its Howell form instead of filtering all (q-1)^m vectors. Floating complex
/// arithmetic with Kahan summation; the result is rounded to the nearest
/// integer under a precision guard.
inline Int charsum_nstar(const SparsePoly& f, const CharsumOptions& opts = {}) {
  const FieldSpec& F = f.field();
  std::uint64_t q = F.q(), n1 = q - 1;
  if (q > opts.q_max)
    fail("budget_exceeded", "charsum limited to q <= " + std::to_string(opts.q_max));

  // Terms in augmented-matrix column order; the constant enters as -b.
  std::vector<std::uint64_t> column_coeffs;
  for (const Term& t : f.terms()) column_coeffs.push_back(t.coeff);
  if (f.b() != 0) column_coeffs.push_back(F.neg(f.b()));
  std::size_t m = column_coeffs.size();
  if (m > opts.m_max)
    fail("budget_exceeded", "charsum limited to " + std::to_string(opts.m_max) + " terms");
  unsigned n = f.n_vars();

  std::vector<GaussSum> gs(n1);
  for (std::uint64_t k = 0; k < n1; ++k) gs[k] = gauss_sum(k, F);
  std::vector<std::uint64_t> coeff_dlog(m);
  for (std::size_t j = 0; j < m; ++j) coeff_dlog[j] = F.dlog(column_coeffs[j]);
  constexpr double two_pi = 6.283185307179586476925286766559;
  std::vector<std::complex<double>> unity(n1);
  for (std::uint64_t j = 0; j < n1; ++j)
    unity[j] = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n1));

  ResidueMatrix constraints = augmented_degree_matrix(f).residues();
  std::complex<double> sum = 0, comp = 0;
  std::uint64_t nsol = 0;
  for_each_nullspace_vector(constraints, [&](const std::vector<std::uint64_t>& v) {
    std::complex<double> prod = 1;
    for (std::size_t j = 0; j < m; ++j)
      prod *= unity[mulmod(coeff_dlog[j], v[j], n1)] * gs[v[j]].value;
    std::complex<double> y = prod - comp;
    std::complex<double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    ++nsol;
  });

  double qd = static_cast<double>(q);
  double scale = std::pow(qd - 1.0, static_cast<double>(n) + 1.0 - static_cast<double>(m));
  double lead = std::pow(qd - 1.0, static_cast<double>(n));
  double value = lead / qd + scale / qd * sum.real();

  double eps = std::numeric_limits<double>::epsilon();
  double g_err = 8.0 * static_cast<double>(n1) * eps;
  double per_sol = static_cast<double>(m) *
                   (g_err * std::pow(qd, (static_cast<double>(m) - 1.0) / 2.0) +
                    4.0 * eps * std::pow(qd, static_cast<double>(m) / 2.0));
  double err = per_sol * static_cast<double>(nsol) * scale / qd +
               64.0 * eps * (std::abs(value) + 1.0);

  double rounded = std::round(value);
  double dist = std::abs(value - rounded);
  if (dist > opts.tolerance || dist > std::max(err, 16.0 * eps) || err > 0.4)
    fail("precision_loss", "character sum did not resolve to an integer");
  if (rounded < 0) fail("precision_loss", "character sum produced a negative count");
  Int result(static_cast<std::int64_t>(rounded));
  if (result > int_pow_u64(n1, n))
    fail("precision_loss", "character sum exceeded the (q-1)^n range");
  return result;
}

}  // namespace triroots
