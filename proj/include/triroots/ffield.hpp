// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "triroots/errors.hpp"
#include "triroots/numeric.hpp"

namespace triroots {

/// Exact arithmetic context for F_q, q = p^m.
///
/// Elements are handled as canonical codes in [0, q): the code of the element
/// with coefficient sequence (c_0, ..., c_{m-1}) over Z_p (least significant
/// first) is sum c_i p^i. For m = 1 the code is the residue itself.
///
/// The modulus polynomial and the generator are found by deterministic
/// ascending-code search, so two specs built from the same (p, m) are
/// identical and serialized output is reproducible. The discrete-log table is
/// built eagerly for q below `dlog_table_threshold`; larger fields answer
/// dlog queries with baby-step giant-step. A FieldSpec is immutable after
/// construction and safe to share across threads; it is pinned in memory
/// (non-copyable, non-movable) because elements refer to it by address.
struct FieldOptions {
  std::uint64_t q_bound = 1'000'000'000;        // desk-scale arithmetic bound
  std::uint64_t dlog_table_threshold = 1u << 20;
};

class FieldSpec {
 public:
  using Options = FieldOptions;

  FieldSpec(std::uint64_t p, unsigned m, Options opts = {})
      : FieldSpec(p, m, {}, 0, opts) {}

  FieldSpec(std::uint64_t p, unsigned m, std::vector<std::uint64_t> modulus_lsf,
            Options opts = {})
      : FieldSpec(p, m, std::move(modulus_lsf), 0, opts) {}

  /// Full-control constructor; pass an empty modulus and/or generator_code 0
  /// to request the deterministic search. An explicit modulus must be monic
  /// irreducible of degree m; an explicit generator must have order q-1.
  FieldSpec(std::uint64_t p, unsigned m, std::vector<std::uint64_t> modulus_lsf,
            std::uint64_t generator_code, Options opts = {}) {
    if (!is_prime_u64(p)) fail("non_prime", "p = " + std::to_string(p) + " is not prime");
    if (m == 0) fail("degree_zero", "extension degree must be >= 1");
    p_ = p;
    m_ = m;
    q_ = 1;
    for (unsigned i = 0; i < m; ++i) {
      if (q_ > opts.q_bound / p) fail("bound_exceeded", "p^m exceeds the configured bound");
      q_ *= p;
    }
    if (m_ > 1) {
      if (modulus_lsf.empty()) {
        modulus_ = find_irreducible();
      } else {
        modulus_ = std::move(modulus_lsf);
        validate_modulus();
      }
    }
    if (generator_code == 0) {
      generator_ = find_generator();
    } else {
      generator_ = generator_code;
      if (generator_ >= q_ || !has_full_order(generator_))
        fail("bad_generator", "element does not have multiplicative order q-1");
    }
    if (q_ <= opts.dlog_table_threshold && q_ - 1 <= UINT32_MAX) {
      dlog_table_.assign(q_, 0);
      std::uint64_t cur = 1;
      for (std::uint64_t j = 0; j + 1 < q_; ++j) {
        dlog_table_[cur] = static_cast<std::uint32_t>(j);
        cur = mul(cur, generator_);
      }
    }
  }

  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;
  FieldSpec(FieldSpec&&) = delete;
  FieldSpec& operator=(FieldSpec&&) = delete;

  std::uint64_t p() const { return p_; }
  unsigned m() const { return m_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t generator() const { return generator_; }
  /// Modulus polynomial, LSF coefficients of length m+1; empty when m = 1.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  bool same_as(const FieldSpec& o) const {
    return this == &o || (p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_);
  }

  // -- code-level arithmetic ------------------------------------------------

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (m_ == 1) return addmod(a, b, p_);
    std::uint64_t out = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
      out += addmod(a % p_, b % p_, p_) * scale;
      a /= p_; b /= p_;
      scale *= p_;
    }
    return out;
  }

  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    if (m_ == 1) return submod(a, b, p_);
    std::uint64_t out = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
      out += submod(a % p_, b % p_, p_) * scale;
      a /= p_; b /= p_;
      scale *= p_;
    }
    return out;
  }

  std::uint64_t neg(std::uint64_t a) const { return sub(0, a); }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (m_ == 1) return mulmod(a, b, p_);
    std::uint64_t da[kMaxDegree], db[kMaxDegree], prod[2 * kMaxDegree];
    to_digits(a, da);
    to_digits(b, db);
    for (unsigned i = 0; i < 2 * m_; ++i) prod[i] = 0;
    for (unsigned i = 0; i < m_; ++i) {
      if (da[i] == 0) continue;
      for (unsigned j = 0; j < m_; ++j) prod[i + j] += da[i] * db[j];
    }
    reduce_poly(prod);
    return from_digits(prod);
  }

  std::uint64_t pow_u64(std::uint64_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    e %= q_ - 1;  // Lagrange; valid only for a != 0
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// pow with arbitrary-precision exponent; pow(0, 0) = 1 (x^0 is the empty
  /// product), pow(0, e) = 0 for e > 0.
  std::uint64_t pow(std::uint64_t a, const Int& e) const {
    if (e < 0) fail("negative_exponent", "exponent must be nonnegative");
    if (a == 0) return e == 0 ? 1 : 0;
    return pow_u64(a, mod_u64(e, q_ - 1));
  }

  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) fail("division_by_zero", "inverse of zero");
    if (m_ == 1) {
      XGcd r = xgcd(a, p_);
      return to_residue(r.s, p_);
    }
    return pow_u64(a, q_ - 2);
  }

  std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }

  // -- multiplicative structure ----------------------------------------------

  /// Discrete log base the fixed generator; defined for a != 0, in [0, q-2].
  std::uint64_t dlog(std::uint64_t a) const {
    if (a == 0) fail("log_of_zero", "discrete log of zero");
    if (!dlog_table_.empty()) return dlog_table_[a];
    // Baby-step giant-step.
    std::uint64_t n = q_ - 1;
    std::uint64_t steps = 1;
    while (steps * steps < n) ++steps;
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    baby.reserve(steps);
    std::uint64_t cur = 1;
    for (std::uint64_t j = 0; j < steps; ++j) {
      baby.emplace(cur, j);
      cur = mul(cur, generator_);
    }
    std::uint64_t factor = inv(cur);  // generator^-steps
    std::uint64_t y = a;
    for (std::uint64_t i = 0; i * steps <= n; ++i) {
      auto it = baby.find(y);
      if (it != baby.end()) return (i * steps + it->second) % n;
      y = mul(y, factor);
    }
    fail("internal", "dlog search exhausted");  // unreachable for valid specs
  }

  /// Trace down to F_p, returned as an integer in [0, p).
  std::uint64_t trace(std::uint64_t a) const {
    if (m_ == 1) return a;
    std::uint64_t x = a, acc = a;
    for (unsigned i = 1; i < m_; ++i) {
      x = pow_u64(x, p_);
      acc = add(acc, x);
    }
    return acc;  // lies in the prime subfield, so code == value
  }

  /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
  int quadratic_character(std::uint64_t a) const {
    if (p_ == 2) fail("even_characteristic", "quadratic character requires odd q");
    if (a == 0) return 0;
    return (dlog(a) & 1) ? -1 : 1;
  }

  std::vector<std::uint64_t> coeffs(std::uint64_t code) const {
    std::vector<std::uint64_t> out(m_);
    for (unsigned i = 0; i < m_; ++i) {
      out[i] = code % p_;
      code /= p_;
    }
    return out;
  }

  std::uint64_t from_coeffs(const std::vector<std::uint64_t>& c) const {
    std::uint64_t code = 0;
    for (unsigned i = m_; i-- > 0;) {
      std::uint64_t digit = i < c.size() ? c[i] % p_ : 0;
      code = code * p_ + digit;
    }
    return code;
  }

  /// Embed an integer through the prime subfield.
  std::uint64_t from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(r);
  }

 private:
  static constexpr unsigned kMaxDegree = 32;  // p^m <= 2^63 forces m < 64; bound is generous at desk scale

  void to_digits(std::uint64_t code, std::uint64_t* d) const {
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = code % p_;
      code /= p_;
    }
  }

  std::uint64_t from_digits(const std::uint64_t* d) const {
    std::uint64_t code = 0;
    for (unsigned i = m_; i-- > 0;) code = code * p_ + d[i];
    return code;
  }

  /// In-place reduction of a degree < 2m-1 coefficient array modulo the monic
  /// modulus; coefficients may be unreduced mod p on entry.
  void reduce_poly(std::uint64_t* c) const {
    for (unsigned i = 0; i < 2 * m_; ++i) c[i] %= p_;
    for (unsigned d = 2 * m_ - 2; d + 1 > m_; --d) {
      std::uint64_t lead = c[d];
      if (lead == 0) continue;
      c[d] = 0;
      unsigned shift = d - m_;
      for (unsigned j = 0; j < m_; ++j) {
        // c -= lead * modulus * x^shift
        std::uint64_t t = mulmod(lead, modulus_[j], p_);
        c[shift + j] = submod(c[shift + j] % p_, t, p_);
      }
    }
  }

  bool is_irreducible(const std::vector<std::uint64_t>& poly) const {
    // Exhaustive trial division by all monic polynomials of degree <= m/2.
    // Degree-1 candidates double as the root check.
    for (unsigned d = 1; 2 * d <= m_; ++d) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < d; ++i) count *= p_;
      for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint64_t> divisor(d + 1, 0);
        std::uint64_t c = code;
        for (unsigned i = 0; i < d; ++i) {
          divisor[i] = c % p_;
          c /= p_;
        }
        divisor[d] = 1;
        if (poly_divides(divisor, poly)) return false;
      }
    }
    return true;
  }

  bool poly_divides(const std::vector<std::uint64_t>& divisor,
                    const std::vector<std::uint64_t>& poly) const {
    std::vector<std::uint64_t> rem = poly;
    unsigned dd = static_cast<unsigned>(divisor.size()) - 1;
    for (unsigned d = static_cast<unsigned>(rem.size()) - 1; d + 1 > dd; --d) {
      std::uint64_t lead = rem[d];
      if (lead == 0) continue;
      rem[d] = 0;
      unsigned shift = d - dd;
      for (unsigned j = 0; j < dd; ++j)
        rem[shift + j] = submod(rem[shift + j], mulmod(lead, divisor[j], p_), p_);
    }
    for (unsigned j = 0; j < dd; ++j)
      if (rem[j] != 0) return false;
    return true;
  }

  std::vector<std::uint64_t> find_irreducible() const {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m_; ++i) count *= p_;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint64_t> poly(m_ + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < m_; ++i) {
        poly[i] = c % p_;
        c /= p_;
      }
      poly[m_] = 1;
      if (is_irreducible(poly)) return poly;
    }
    fail("internal", "no irreducible polynomial found");  // unreachable
  }

  void validate_modulus() const {
    if (modulus_.size() != m_ + 1 || modulus_[m_] != 1)
      fail("bad_modulus", "modulus must be monic of degree m");
    for (std::uint64_t c : modulus_)
      if (c >= p_) fail("bad_modulus", "modulus coefficients must be reduced mod p");
    if (!is_irreducible(modulus_)) fail("reducible_modulus", "modulus is reducible over F_p");
  }

  bool has_full_order(std::uint64_t g) const {
    if (g == 0) return false;
    std::uint64_t n = q_ - 1;
    if (n == 1) return true;
    for (const auto& [prime, exp] : factorize_u64(n)) {
      (void)exp;
      if (pow_u64(g, n / prime) == 1) return false;
    }
    return true;
  }

  std::uint64_t find_generator() const {
    for (std::uint64_t c = 1; c < q_; ++c)
      if (has_full_order(c)) return c;
    fail("internal", "no generator found");  // unreachable
  }

  std::uint64_t p_ = 0;
  unsigned m_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint64_t> modulus_;
  std::uint64_t generator_ = 0;
  std::vector<std::uint32_t> dlog_table_;
};

/// A field element: a code bound to its field. Values are cheap to copy;
/// the FieldSpec must outlive every element created from it.
class FieldElement {
 public:
  FieldElement(const FieldSpec& field, std::uint64_t code)
      : field_(&field), code_(code) {
    if (code_ >= field.q()) fail("bad_element", "element code out of range");
  }

  std::uint64_t code() const { return code_; }
  const FieldSpec& field() const { return *field_; }
  bool is_zero() const { return code_ == 0; }
  std::vector<std::uint64_t> coeffs() const { return field_->coeffs(code_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return FieldElement(*a.field_, a.field_->add(a.code_, b.code_));
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return FieldElement(*a.field_, a.field_->sub(a.code_, b.code_));
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return FieldElement(*a.field_, a.field_->mul(a.code_, b.code_));
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return FieldElement(*a.field_, a.field_->div(a.code_, b.code_));
  }
  FieldElement operator-() const { return FieldElement(*field_, field_->neg(code_)); }

  FieldElement pow(const Int& e) const {
    return FieldElement(*field_, field_->pow(code_, e));
  }
  FieldElement inv() const { return FieldElement(*field_, field_->inv(code_)); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_->same_as(*b.field_) && a.code_ == b.code_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

 private:
  static void check(const FieldElement& a, const FieldElement& b) {
    if (!a.field_->same_as(*b.field_))
      fail("field_mismatch", "elements belong to different fields");
  }

  const FieldSpec* field_;
  std::uint64_t code_;
};

inline std::uint64_t discrete_log(const FieldElement& a) {
  return a.field().dlog(a.code());
}

inline std::uint64_t trace(const FieldElement& a) {
  return a.field().trace(a.code());
}

inline int quadratic_character(const FieldElement& a) {
  return a.field().quadratic_character(a.code());
}

}  // namespace triroots
