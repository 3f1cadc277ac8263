#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "msym/errors.hpp"

namespace msym {

using Integer = boost::multiprecision::cpp_int;

inline Integer mod_floor(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

// Generalized binomial C(n, k) = n(n-1)...(n-k+1) / k!, integer-valued
// for every integer n including negatives.
inline Integer binomial_integer(const Integer& n, int k) {
  if (k < 0) return 0;
  Integer num = 1, den = 1;
  for (int j = 0; j < k; ++j) {
    num *= n - j;
    den *= j + 1;
  }
  return num / den;
}

inline Integer mod_pow(Integer a, Integer e, const Integer& n) {
  if (n < 1) fail(errc::invalid_modulus, "modulus must be >= 1");
  if (e < 0) fail(errc::invalid_modulus, "negative exponent");
  a = mod_floor(a, n);
  Integer r = mod_floor(1, n);
  while (e > 0) {
    if (bit_test(e, 0)) r = r * a % n;
    a = a * a % n;
    e >>= 1;
  }
  return r;
}

namespace detail {

inline bool miller_rabin_witness(const Integer& n, const Integer& a,
                                 const Integer& d, unsigned s) {
  // returns true if a proves n composite
  Integer x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace detail

/// Deterministic for n < 3.3e24 (covers 64-bit) via the first twelve prime
/// witnesses; larger inputs get trial division plus the same strong
/// probable-prime test.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static const int small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                     23, 29, 31, 37, 41, 43, 47, 53};
  for (int p : small_primes) {
    if (n % p == 0) return n == p;
  }
  static const Integer deterministic_limit =
      Integer("3317044064679887385961981");  // witness set valid below this
  if (n >= deterministic_limit) {
    for (int p = 59; p < 20000; p += 2) {
      if (n % p == 0) return false;
    }
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (bit_test(d, 0) == false) {
    d >>= 1;
    ++s;
  }
  static const int witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int a : witnesses) {
    if (detail::miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

inline int legendre_symbol(const Integer& a, const Integer& p) {
  if (p < 3 || bit_test(p, 0) == false || !is_prime(p))
    fail(errc::invalid_modulus, "p must be an odd prime");
  Integer r = mod_floor(a, p);
  if (r == 0) return 0;
  Integer t = mod_pow(r, (p - 1) / 2, p);
  return t == 1 ? 1 : -1;
}

/// Tonelli-Shanks; returns the root s with 0 < s <= (p-1)/2.
inline Integer sqrt_mod_p(const Integer& a, const Integer& p) {
  if (legendre_symbol(a, p) != 1) fail(errc::non_residue, "a is not a nonzero square mod p");
  Integer r;
  if (p % 4 == 3) {
    r = mod_pow(a, (p + 1) / 4, p);
  } else {
    Integer q = p - 1;
    unsigned s = 0;
    while (bit_test(q, 0) == false) {
      q >>= 1;
      ++s;
    }
    Integer z = 2;
    while (legendre_symbol(z, p) != -1) ++z;
    unsigned m = s;
    Integer c = mod_pow(z, q, p);
    Integer t = mod_pow(a, q, p);
    r = mod_pow(a, (q + 1) / 2, p);
    while (t != 1) {
      unsigned i = 0;
      Integer tt = t;
      while (tt != 1) {
        tt = tt * tt % p;
        ++i;
      }
      Integer b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
      m = i;
      c = b * b % p;
      t = t * c % p;
      r = r * b % p;
    }
  }
  if (r > (p - 1) / 2) r = p - r;
  return r;
}

struct TernarySolution {
  Integer x, y, z;
  Integer p1, p2;
};

inline Integer isqrt_exact(const Integer& n) {
  // returns s with s*s == n, or -1
  if (n < 0) return -1;
  Integer s = sqrt(n);
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s * s == n ? s : Integer(-1);
}

inline void check_redei_pair(const Integer& p1, const Integer& p2) {
  if (!is_prime(p1) || !is_prime(p2)) fail(errc::not_prime, "p1, p2 must be prime");
  if (p1 == p2) fail(errc::distinctness_violated, "p1 and p2 must differ");
  if (p1 % 4 != 1 || p2 % 4 != 1)
    fail(errc::not_admissible, "p1 and p2 must be 1 mod 4");
  if (legendre_symbol(p1, p2) != 1 || legendre_symbol(p2, p1) != 1)
    fail(errc::not_admissible, "p1 and p2 must be mutual quadratic residues");
}

namespace detail {

template <class Accept>
inline bool ternary_scan(const Integer& p1, const Integer& p2, long bound,
                         Accept&& accept) {
  // (|z|, |y|) order, positive sign first, y even; x-sign forced by
  // x - y = 1 mod 4. gcd primitivity is a pure filter.
  for (long az = 0; az <= bound; ++az) {
    for (long ay = 0; ay <= bound; ay += 2) {
      for (int zs = 0; zs < (az == 0 ? 1 : 2); ++zs) {
        Integer z = zs == 0 ? az : -az;
        for (int ys = 0; ys < (ay == 0 ? 1 : 2); ++ys) {
          Integer y = ys == 0 ? ay : -ay;
          Integer rhs = p1 * y * y + p2 * z * z;
          Integer x0 = isqrt_exact(rhs);
          if (x0 < 0) continue;
          for (int xs = 0; xs < (x0 == 0 ? 1 : 2); ++xs) {
            Integer x = xs == 0 ? x0 : -x0;
            if (x == 0 && y == 0 && z == 0) continue;
            if (gcd(gcd(abs(x), abs(y)), abs(z)) != 1) continue;
            if (mod_floor(x - y, 4) != 1) continue;
            if (accept(TernarySolution{x, y, z, p1, p2})) return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace detail

/// First primitive solution of x^2 - p1 y^2 - p2 z^2 = 0 with y even and
/// x - y = 1 mod 4, in (|z|, |y|) order. skip > 0 asks for later solutions
/// in the same order (certificate-independence checks).
inline TernarySolution solve_legendre_ternary(const Integer& p1,
                                              const Integer& p2, long bound,
                                              long skip = 0) {
  if (bound < 1) fail(errc::invalid_modulus, "bound must be positive");
  check_redei_pair(p1, p2);
  TernarySolution out;
  long seen = 0;
  bool found = detail::ternary_scan(p1, p2, bound, [&](const TernarySolution& s) {
    if (seen++ < skip) return false;
    out = s;
    return true;
  });
  if (!found)
    fail(errc::bound_exceeded, "no ternary solution within bound " + std::to_string(bound));
  return out;
}

}  // namespace msym
