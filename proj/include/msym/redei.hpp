#pragma once

#include <vector>

#include "msym/arith.hpp"
#include "msym/errors.hpp"
#include "msym/symbol.hpp"

namespace msym {

inline constexpr long kDefaultTernaryBound = 10000;

// Data defining the quadratic tower Q(sqrt p1, sqrt p2, sqrt alpha) with
// alpha = x + y sqrt(p1) taken from a normalized ternary solution.
struct RedeiCertificate {
  Integer p1, p2;
  TernarySolution sol;

  Integer alpha_x() const { return sol.x; }
  Integer alpha_y() const { return sol.y; }
};

// Distinctness and primality are hard requirements; the congruence and
// Legendre conditions are the boolean payload.
inline bool redei_admissible(const Integer& p1, const Integer& p2,
                             const Integer& p3) {
  const Integer* ps[3] = {&p1, &p2, &p3};
  for (int i = 0; i < 3; ++i) {
    if (!is_prime(*ps[i]) || *ps[i] == 2)
      fail(errc::not_prime, "redei_admissible: arguments must be odd primes");
    for (int j = i + 1; j < 3; ++j)
      if (*ps[i] == *ps[j])
        fail(errc::distinctness_violated,
             "redei_admissible: primes must be pairwise distinct");
  }
  for (int i = 0; i < 3; ++i)
    if (*ps[i] % 4 != 1) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && legendre_symbol(*ps[i], *ps[j]) != 1) return false;
  return true;
}

inline RedeiCertificate construct_alpha(const Integer& p1, const Integer& p2,
                                        long bound = kDefaultTernaryBound,
                                        long skip = 0) {
  TernarySolution sol = solve_legendre_ternary(p1, p2, bound, skip);
  return RedeiCertificate{p1, p2, sol};
}

// Residue evaluation of the symbol from an explicit certificate.  s may
// be either square root of p1 mod p3; the result is independent of the
// choice.
inline SymbolValue redei_symbol_from(const RedeiCertificate& cert,
                                     const Integer& p3) {
  Integer s = sqrt_mod_p(mod_floor(cert.p1, p3), p3);
  Integer plus = mod_floor(cert.sol.x + s * cert.sol.y, p3);
  Integer minus = mod_floor(cert.sol.x - s * cert.sol.y, p3);
  Integer v = plus != 0 ? plus : minus;
  if (v == 0)
    fail(errc::degenerate,
         "redei_symbol: p3 divides both conjugates of alpha; rebuild the "
         "certificate with a larger bound or skip");
  int leg = legendre_symbol(v, p3);
  return make_symbol(2, leg == 1 ? 0 : 1);
}

inline SymbolValue redei_symbol(const Integer& p1, const Integer& p2,
                                const Integer& p3,
                                long bound = kDefaultTernaryBound) {
  if (!redei_admissible(p1, p2, p3))
    fail(errc::not_admissible,
         "redei_symbol: need p_i = 1 mod 4 and all mutual Legendre symbols 1");
  return redei_symbol_from(construct_alpha(p1, p2, bound), p3);
}

namespace detail {

// Dense polynomials over F_p, little-endian coefficients.
using Poly = std::vector<Integer>;

inline void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_rem(Poly f, const Poly& g, const Integer& p) {
  // g monic-izable; reduce f mod g
  Poly gm = g;
  poly_trim(gm);
  Integer lead_inv = mod_pow(gm.back(), p - 2, p);
  poly_trim(f);
  while (f.size() >= gm.size()) {
    Integer c = mod_floor(f.back() * lead_inv, p);
    size_t shift = f.size() - gm.size();
    for (size_t i = 0; i < gm.size(); ++i)
      f[shift + i] = mod_floor(f[shift + i] - c * gm[i], p);
    poly_trim(f);
  }
  return f;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g,
                        const Integer& p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = mod_floor(c[i + j] + a[i] * b[j], p);
  }
  return poly_rem(std::move(c), g, p);
}

inline Poly poly_powmod_x(const Integer& e, const Poly& g, const Integer& p) {
  // x^e mod g
  Poly base = poly_rem(Poly{0, 1}, g, p);
  Poly acc = poly_rem(Poly{1}, g, p);
  Integer k = e;
  while (k > 0) {
    if (bit_test(k, 0)) acc = poly_mulmod(acc, base, g, p);
    base = poly_mulmod(base, base, g, p);
    k >>= 1;
  }
  return acc;
}

inline Poly poly_gcd(Poly a, Poly b, const Integer& p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace detail

// Independent splitting test: p3 decomposes completely in the degree-8
// tower iff p1, p2 are squares mod p3 and T^4 - 2x T^2 + p2 z^2 splits
// into distinct linear factors mod p3.  Root count = deg gcd(T^p3 - T, q).
inline bool redei_splitting_oracle(const RedeiCertificate& cert,
                                   const Integer& p3) {
  if (!is_prime(p3) || p3 == 2)
    fail(errc::not_prime, "redei_splitting_oracle: p3 must be an odd prime");
  if (legendre_symbol(cert.p1, p3) != 1) return false;
  if (legendre_symbol(cert.p2, p3) != 1) return false;
  detail::Poly q = {mod_floor(cert.p2 * cert.sol.z * cert.sol.z, p3), 0,
                    mod_floor(-2 * cert.sol.x, p3), 0, 1};
  detail::Poly xp = detail::poly_powmod_x(p3, q, p3);
  // T^p3 - T mod q
  if (xp.size() < 2) xp.resize(2, Integer(0));
  xp[1] = mod_floor(xp[1] - 1, p3);
  detail::poly_trim(xp);
  detail::Poly g = detail::poly_gcd(q, xp, p3);
  return g.size() == 5;  // degree 4: all roots distinct and rational
}

}  // namespace msym
