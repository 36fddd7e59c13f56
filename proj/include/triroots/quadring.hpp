// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "triroots/errors.hpp"
#include "triroots/numeric.hpp"

namespace triroots {

/// tau^2 for a given odd q: +q when (q-1)/2 is even, -q otherwise, i.e.
/// tau = (q * (-1)^{(q-1)/2})^{1/2}.
inline Int tau_squared(std::uint64_t q) {
  if (q % 2 == 0) fail("even_q", "tau is defined for odd q only");
  return ((q - 1) / 2) % 2 == 0 ? Int(q) : -Int(q);
}

/// Exact element x + y*tau of the ring Q[tau]/(tau^2 - t), t = +-q. All the
/// quadratic counting expressions live here; nothing is ever evaluated as a
/// floating complex number, and final results are checked to be integral.
class QuadRingNumber {
 public:
  QuadRingNumber(Rat rational, Rat tau_coeff, Int tau_sq)
      : a_(std::move(rational)), b_(std::move(tau_coeff)), t_(std::move(tau_sq)) {}

  static QuadRingNumber integer(const Int& v, const Int& tau_sq) {
    return QuadRingNumber(Rat(v), Rat(0), tau_sq);
  }
  static QuadRingNumber rational(const Rat& v, const Int& tau_sq) {
    return QuadRingNumber(v, Rat(0), tau_sq);
  }
  static QuadRingNumber tau(const Int& tau_sq) {
    return QuadRingNumber(Rat(0), Rat(1), tau_sq);
  }

  const Rat& rat() const { return a_; }
  const Rat& tau_coeff() const { return b_; }
  const Int& tau_sq() const { return t_; }

  friend QuadRingNumber operator+(const QuadRingNumber& x, const QuadRingNumber& y) {
    check(x, y);
    return {x.a_ + y.a_, x.b_ + y.b_, x.t_};
  }
  friend QuadRingNumber operator-(const QuadRingNumber& x, const QuadRingNumber& y) {
    check(x, y);
    return {x.a_ - y.a_, x.b_ - y.b_, x.t_};
  }
  QuadRingNumber operator-() const { return {-a_, -b_, t_}; }

  friend QuadRingNumber operator*(const QuadRingNumber& x, const QuadRingNumber& y) {
    check(x, y);
    return {x.a_ * y.a_ + x.b_ * y.b_ * Rat(x.t_), x.a_ * y.b_ + x.b_ * y.a_, x.t_};
  }

  QuadRingNumber scale(const Rat& c) const { return {a_ * c, b_ * c, t_}; }

  /// Division by a rational scalar (exact).
  QuadRingNumber div_rat(const Rat& c) const {
    if (c == 0) fail("division_by_zero", "division by zero scalar");
    return {a_ / c, b_ / c, t_};
  }

  /// Exact division by tau: (x + y tau)/tau = y + (x/t) tau.
  QuadRingNumber div_tau() const { return {b_, a_ / Rat(t_), t_}; }

  /// General division via the conjugate; the divisor's norm a^2 - b^2 t must
  /// be nonzero.
  friend QuadRingNumber operator/(const QuadRingNumber& x, const QuadRingNumber& y) {
    check(x, y);
    Rat norm = y.a_ * y.a_ - y.b_ * y.b_ * Rat(y.t_);
    if (norm == 0) fail("division_by_zero", "divisor has zero norm");
    QuadRingNumber conj(y.a_, -y.b_, y.t_);
    return (x * conj).div_rat(norm);
  }

  QuadRingNumber pow(unsigned e) const {
    QuadRingNumber r = integer(1, t_);
    QuadRingNumber base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  bool is_integral() const {
    return b_ == 0 && boost::multiprecision::denominator(a_) == 1;
  }

  /// Integer value; the counting formulas are algebraic integers in disguise,
  /// so a non-integral result signals an internal inconsistency.
  Int to_int() const {
    if (!is_integral())
      fail("non_integral_result", "quadratic-ring value is not an integer");
    return boost::multiprecision::numerator(a_);
  }

  friend bool operator==(const QuadRingNumber& x, const QuadRingNumber& y) {
    return x.t_ == y.t_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  static void check(const QuadRingNumber& x, const QuadRingNumber& y) {
    if (x.t_ != y.t_) fail("ring_mismatch", "operands from different quadratic rings");
  }

  Rat a_;  // rational part
  Rat b_;  // coefficient of tau
  Int t_;  // tau^2
};

/// The constants zeta_1 = tau - 1 and zeta_2 = -tau - 1 of the quadratic
/// counting theorems.
struct ZetaPair {
  QuadRingNumber z1;
  QuadRingNumber z2;
  Int tau_sq;
};

inline ZetaPair zeta_constants(std::uint64_t q) {
  Int t = tau_squared(q);
  QuadRingNumber tau = QuadRingNumber::tau(t);
  QuadRingNumber one = QuadRingNumber::integer(1, t);
  return {tau - one, -tau - one, t};
}

}  // namespace triroots
