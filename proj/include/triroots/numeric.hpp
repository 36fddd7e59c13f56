// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "triroots/errors.hpp"

namespace triroots {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % n);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  std::uint64_t s = a + b;  // a, b < n <= 2^63 so no wrap
  return s >= n ? s - n : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return a >= b ? a - b : a + n - b;
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp,
                            std::uint64_t n) {
  if (n == 1) return 0;
  std::uint64_t r = 1;
  base %= n;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return r;
}

struct XGcd {
  std::uint64_t g;
  std::int64_t s;  // s*a + t*b == g (over the integers)
  std::int64_t t;
};

inline XGcd xgcd(std::uint64_t a, std::uint64_t b) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  std::uint64_t r0 = a, r1 = b;
  while (r1 != 0) {
    std::uint64_t q = r0 / r1;
    std::uint64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - static_cast<std::int64_t>(q) * s1;
    std::int64_t t2 = t0 - static_cast<std::int64_t>(q) * t1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  return {r0, s0, t0};
}

/// Reduce a possibly-negative Bezout coefficient into [0, n).
inline std::uint64_t to_residue(std::int64_t v, std::uint64_t n) {
  std::int64_t m = v % static_cast<std::int64_t>(n);
  if (m < 0) m += static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(m);
}

/// Deterministic primality check, adequate for desk-scale inputs.
inline bool is_prime_u64(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  if (p % 3 == 0) return p == 3;
  for (std::uint64_t d = 5; d * d <= p; d += 6) {
    if (p % d == 0 || p % (d + 2) == 0) return false;
  }
  return true;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factorize_u64(
    std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) { n /= d; ++e; }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline Int int_pow(const Int& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline Int int_pow_u64(std::uint64_t base, unsigned exp) {
  return int_pow(Int(base), exp);
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline int parity_sign(unsigned long long k) { return (k & 1) ? -1 : 1; }

/// Residue of an arbitrary-precision integer mod a machine-word modulus.
inline std::uint64_t mod_u64(const Int& v, std::uint64_t n) {
  Int r = v % n;
  if (r < 0) r += n;
  return r.convert_to<std::uint64_t>();
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  return std::gcd(a, b);
}

}  // namespace triroots
