#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "msym/arith.hpp"
#include "msym/eisenstein.hpp"
#include "msym/errors.hpp"
#include "msym/symbol.hpp"

namespace msym {

inline constexpr long kDefaultAlphaBound = 10;

// Element x + y t + z t^2 of Z[z3][t]/(t^3 - pi1).
struct CubicRingElem {
  EisInt x, y, z;
  EisPrime pi1;

  friend bool operator==(const CubicRingElem& u, const CubicRingElem& v) {
    return u.x == v.x && u.y == v.y && u.z == v.z && u.pi1 == v.pi1;
  }
};

inline CubicRingElem cubic_elem(EisInt x, EisInt y, EisInt z,
                                const EisPrime& pi1) {
  return CubicRingElem{std::move(x), std::move(y), std::move(z), pi1};
}

inline CubicRingElem cubic_mul(const CubicRingElem& u, const CubicRingElem& v) {
  if (!(u.pi1 == v.pi1))
    fail(errc::context_mismatch, "cubic_mul: operands live over different pi1");
  const EisInt& p = u.pi1.pi;
  // degree-4 product, then t^3 -> pi1, t^4 -> pi1 t
  EisInt c0 = u.x * v.x;
  EisInt c1 = u.x * v.y + u.y * v.x;
  EisInt c2 = u.x * v.z + u.y * v.y + u.z * v.x;
  EisInt c3 = u.y * v.z + u.z * v.y;
  EisInt c4 = u.z * v.z;
  return CubicRingElem{c0 + p * c3, c1 + p * c4, c2, u.pi1};
}

inline EisInt cubic_norm(const CubicRingElem& u) {
  const EisInt& p = u.pi1.pi;
  EisInt x3 = u.x * u.x * u.x;
  EisInt y3 = u.y * u.y * u.y;
  EisInt z3 = u.z * u.z * u.z;
  return x3 + p * y3 + p * p * z3 - EisInt(3) * p * (u.x * u.y * u.z);
}

// tau: t -> z3 t, so (x, y, z) -> (x, z3 y, z3^2 z).
inline CubicRingElem tau_conjugate(const CubicRingElem& u) {
  const EisInt z3{0, 1};
  return CubicRingElem{u.x, z3 * u.y, z3 * z3 * u.z, u.pi1};
}

namespace detail {

// ---- exact Eisenstein cube roots -----------------------------------------

inline Integer icbrt_exact(const Integer& n) {
  // returns c with c^3 == n (sign respected), or the flag value with no cube
  Integer a = abs(n);
  if (a == 0) return 0;
  Integer c = 1, hi = 1;
  while (hi * hi * hi < a) hi <<= 1;
  Integer lo = hi >> 1;
  while (lo <= hi) {
    Integer mid = (lo + hi) >> 1;
    Integer m3 = mid * mid * mid;
    if (m3 == a) { c = mid; lo = hi + 1; }
    else if (m3 < a) lo = mid + 1;
    else hi = mid - 1;
  }
  if (c * c * c != a) return Integer(-1);
  return n < 0 ? -c : c;
}

inline std::optional<EisInt> eis_cube_root(const EisInt& d) {
  if (d.a == 0 && d.b == 0) return EisInt{0, 0};
  Integer nd = eis_norm(d);
  Integer n = icbrt_exact(nd);
  if (n < 0) return std::nullopt;
  // |a|, |b| <= sqrt(4n/3) for norm-n elements; the three roots differ by
  // cube roots of unity, return the least in the canonical associate order
  Integer bound = sqrt(Integer(4 * n / 3)) + 1;
  std::optional<EisInt> best;
  for (Integer a = -bound; a <= bound; ++a)
    for (Integer b = -bound; b <= bound; ++b) {
      if (a * a - a * b + b * b != n) continue;
      EisInt g{a, b};
      if (g * g * g == d && (!best || eis_order_less(g, *best))) best = g;
    }
  return best;
}

// ---- valuation-shape filter ----------------------------------------------
//
// The norm equation N(alpha) = pi2 gamma^3 leaves one degeneracy: at a
// prime of Z[z3] dividing gamma that splits completely in the cubic
// extension, the three valuations of alpha could fail to be congruent
// mod 3, and then (theta) is not of the certified ideal shape.  The
// check below computes those valuations through Hensel-lifted roots of
// t^3 - pi1 and rejects such alpha.

struct PadicCtx {
  // arithmetic in Z[z3]/lambda^E presented as (Z/p^E)[u]/(u^2+u+1);
  // split lambda uses d = 0 throughout with u |-> omega lift
  Integer pe;       // p^E
  Integer p;
  int E = 0;
  bool split = false;
  Integer omega;    // split only: lifted root of u^2+u+1 mod p^E
};

struct PadicElem {
  Integer c, d;
};

inline PadicElem pd_make(const PadicCtx& K, const EisInt& v) {
  if (K.split)
    return {mod_floor(v.a + v.b * K.omega, K.pe), 0};
  return {mod_floor(v.a, K.pe), mod_floor(v.b, K.pe)};
}

inline PadicElem pd_mul(const PadicCtx& K, const PadicElem& u,
                        const PadicElem& v) {
  return {mod_floor(u.c * v.c - u.d * v.d, K.pe),
          mod_floor(u.c * v.d + u.d * v.c - u.d * v.d, K.pe)};
}

inline PadicElem pd_add(const PadicCtx& K, const PadicElem& u,
                        const PadicElem& v) {
  return {mod_floor(u.c + v.c, K.pe), mod_floor(u.d + v.d, K.pe)};
}

inline PadicElem pd_sub(const PadicCtx& K, const PadicElem& u,
                        const PadicElem& v) {
  return {mod_floor(u.c - v.c, K.pe), mod_floor(u.d - v.d, K.pe)};
}

inline PadicElem pd_inv(const PadicCtx& K, const PadicElem& u) {
  // conj / norm; norm must be a unit mod p
  PadicElem cj{mod_floor(u.c - u.d, K.pe), mod_floor(-u.d, K.pe)};
  Integer n = mod_floor(u.c * u.c - u.c * u.d + u.d * u.d, K.pe);
  Integer ninv = mod_pow(n, K.pe / K.p * (K.p - 1) - 1, K.pe);  // unit group order - 1
  return {mod_floor(cj.c * ninv, K.pe), mod_floor(cj.d * ninv, K.pe)};
}

inline int pd_valuation(const PadicCtx& K, PadicElem u) {
  // lambda-adic valuation, capped at E; lambda = p (inert) or the split
  // prime, where divisibility by lambda in the split presentation is
  // divisibility of the single coordinate by p
  int v = 0;
  while (v < K.E) {
    if (u.c % K.p != 0 || (!K.split && u.d % K.p != 0)) break;
    u.c /= K.p;
    u.d /= K.p;
    ++v;
  }
  return v;
}

inline Integer hensel_lift_quadratic_root(const Integer& r0, const Integer& p,
                                          const Integer& pe) {
  // root of u^2 + u + 1 from mod p to mod p^E by Newton steps
  Integer r = mod_floor(r0, p);
  Integer mod = p;
  while (mod < pe) {
    mod = mod * mod;
    if (mod > pe) mod = pe;
    Integer f = mod_floor(r * r + r + 1, mod);
    Integer df = mod_floor(2 * r + 1, mod);
    Integer dfinv = mod_pow(df, mod / p * (p - 1) - 1, mod);
    r = mod_floor(r - f * dfinv, mod);
  }
  return mod_floor(r, pe);
}

inline PadicElem pd_hensel_cube_root(const PadicCtx& K, const PadicElem& a,
                                     const PadicElem& r0) {
  // root of t^3 - a from a simple root r0 mod p
  PadicElem r = r0;
  // Newton: r <- r - (r^3 - a) / (3 r^2); iterate enough times to cover E
  for (int it = 0; (1 << it) < 2 * K.E + 2; ++it) {
    PadicElem r2 = pd_mul(K, r, r);
    PadicElem f = pd_sub(K, pd_mul(K, r2, r), a);
    PadicElem df = pd_mul(K, PadicElem{3, 0}, r2);
    r = pd_sub(K, r, pd_mul(K, f, pd_inv(K, df)));
  }
  return r;
}

inline std::vector<Integer> small_prime_factors(Integer n) {
  std::vector<Integer> out;
  n = abs(n);
  for (Integer d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// The three roots of t^3 = a in F_q given by a residue field; empty when a
// is not a cube.
inline std::vector<RFElem> field_cube_roots(const ResidueField& F,
                                            const RFElem& a) {
  if (F.is_zero(a)) return {};
  if (cubic_character_in(F, a) != 0) return {};
  RFElem r = cube_root_in_field(a, F);
  RFElem w = F.kind == PrimeKind::inert ? RFElem{Integer(0), Integer(1)}
                                        : F.omega;
  // cube roots of unity in F_q: 1, w_q, w_q^2 with w_q = omega image
  RFElem w1 = F.pow(w, 1);
  return {r, F.mul(r, w1), F.mul(r, F.mul(w1, w1))};
}

// valuations of alpha at the three degree-1 primes over lambda, congruent
// mod 3 or not
inline bool valuations_congruent_at(const CubicRingElem& alpha,
                                    const Integer& ell, bool split_prime,
                                    const Integer& omega_mod_ell, int cap) {
  PadicCtx K;
  K.p = ell;
  K.E = cap;
  K.split = split_prime;
  K.pe = 1;
  for (int i = 0; i < cap; ++i) K.pe *= ell;
  if (split_prime)
    K.omega = hensel_lift_quadratic_root(omega_mod_ell, ell, K.pe);

  // residue field mod lambda for root finding
  ResidueField F;
  F.p = ell;
  if (split_prime) {
    F.q = ell;
    F.kind = PrimeKind::split;
    F.omega = {mod_floor(omega_mod_ell, ell), 0};
  } else {
    F.q = ell * ell;
    F.kind = PrimeKind::inert;
    F.omega = {0, 1};
  }
  RFElem pibar = split_prime
                     ? RFElem{mod_floor(alpha.pi1.pi.a +
                                            alpha.pi1.pi.b * omega_mod_ell,
                                        ell),
                              0}
                     : RFElem{mod_floor(alpha.pi1.pi.a, ell),
                              mod_floor(alpha.pi1.pi.b, ell)};
  std::vector<RFElem> roots = field_cube_roots(F, pibar);
  if (roots.size() != 3) return true;  // lambda not completely split: no constraint

  PadicElem a = pd_make(K, alpha.pi1.pi);
  std::array<int, 3> vals{};
  for (int i = 0; i < 3; ++i) {
    PadicElem r = pd_hensel_cube_root(K, a, PadicElem{roots[i].c, roots[i].d});
    PadicElem ax = pd_make(K, alpha.x);
    PadicElem ay = pd_make(K, alpha.y);
    PadicElem az = pd_make(K, alpha.z);
    PadicElem val =
        pd_add(K, ax, pd_add(K, pd_mul(K, ay, r), pd_mul(K, az, pd_mul(K, r, r))));
    vals[i] = pd_valuation(K, val);
  }
  return (vals[0] - vals[1]) % 3 == 0 && (vals[1] - vals[2]) % 3 == 0;
}

inline bool alpha_valuation_shape_ok(const CubicRingElem& alpha,
                                     const EisInt& gamma) {
  Integer ng = eis_norm(gamma);
  if (ng == 1) return true;
  for (const Integer& ell : small_prime_factors(ng)) {
    // cap: valuations at the three primes sum to v_lambda(N(alpha));
    // v_lambda(pi2) = 0 here, so the sum is 3 v_lambda(gamma) <= 3 v_ell(ng)
    int vl = 0;
    Integer t = ng;
    while (t % ell == 0) { t /= ell; ++vl; }
    int cap = 3 * vl + 1;
    if (ell % 3 == 1) {
      // two split primes over ell, one per root of u^2+u+1 mod ell
      Integer om = 0;
      for (Integer u = 1; u < ell; ++u)
        if (mod_floor(u * u + u + 1, ell) == 0) { om = u; break; }
      Integer om2 = mod_floor(-1 - om, ell);
      if (!valuations_congruent_at(alpha, ell, true, om, cap)) return false;
      if (!valuations_congruent_at(alpha, ell, true, om2, cap)) return false;
    } else if (ell % 3 == 2) {
      if (!valuations_congruent_at(alpha, ell, false, 0, cap)) return false;
    }
    // ell == 3 cannot occur: gamma is kept coprime to 3
  }
  return true;
}

// ---- alpha search fast path ----------------------------------------------

struct I64Eis {
  std::int64_t a = 0, b = 0;
};

inline I64Eis i64_mul(const I64Eis& u, const I64Eis& v) {
  return {u.a * v.a - u.b * v.b, u.a * v.b + u.b * v.a - u.b * v.b};
}

inline I64Eis i64_add(const I64Eis& u, const I64Eis& v) {
  return {u.a + v.a, u.b + v.b};
}

inline I64Eis i64_sub(const I64Eis& u, const I64Eis& v) {
  return {u.a - v.a, u.b - v.b};
}

inline I64Eis i64_scale(std::int64_t k, const I64Eis& u) {
  return {k * u.a, k * u.b};
}

// exact division u / v in Z[z3] via conj; false when not divisible
inline bool i64_divide_exact(const I64Eis& u, const I64Eis& v, I64Eis& out) {
  std::int64_t n = v.a * v.a - v.a * v.b + v.b * v.b;
  I64Eis w = i64_mul(u, I64Eis{v.a - v.b, -v.b});
  if (w.a % n != 0 || w.b % n != 0) return false;
  out = {w.a / n, w.b / n};
  return true;
}

inline std::int64_t coord_seq(long rank) {
  // 0, 1, -1, 2, -2, ...
  long k = (rank + 1) / 2;
  return rank % 2 == 1 ? k : -k;
}

}  // namespace detail

namespace detail {

// Candidate acceptance shared by both scan widths: exact division of the
// norm by pi2, cube extraction, coprimality of the cube to 3 and to the
// rational prime under pi2, and the valuation-shape filter.
template <class Visit>
inline bool try_candidate(const EisPrime& pi1, const EisPrime& pi2,
                          const EisInt& x, const EisInt& y, const EisInt& z,
                          const EisInt& norm, Visit&& visit) {
  auto d = eis_divide_exact(norm, pi2.pi);
  if (!d) return false;
  if (d->a == 0 && d->b == 0) return false;
  Integer nd = eis_norm(*d);
  if (nd % 3 == 0) return false;
  if (nd % pi2.p == 0) return false;
  auto gamma = eis_cube_root(*d);
  if (!gamma) return false;
  CubicRingElem alpha = cubic_elem(x, y, z, pi1);
  if (!alpha_valuation_shape_ok(alpha, *gamma)) return false;
  return visit(alpha, *gamma);
}

}  // namespace detail

// Search for alpha = x + y t + z t^2 whose norm is pi2 times the cube of
// an element coprime to 3 and to pi2.  Candidates are ordered by
// increasing maximum coordinate height; inside a shell the six integer
// coordinates vary in nested order (z.b, z.a, y.b, y.a, x.b, x.a), each
// running 0, 1, -1, 2, -2, ...  Visitor receives each accepted candidate
// with its cube witness; return true to stop.
template <class Visit>
inline bool scan_alpha(const EisPrime& pi1, const EisPrime& pi2, long bound,
                       Visit&& visit) {
  if (cubic_character(pi2.pi, pi1) != 0 || cubic_character(pi1.pi, pi2) != 0)
    fail(errc::not_admissible,
         "alpha search needs both mutual cubic characters trivial");

  const Integer coord_cap = 100000;
  const bool fast = bound <= 40 && abs(pi1.pi.a) < coord_cap &&
                    abs(pi1.pi.b) < coord_cap && abs(pi2.pi.a) < coord_cap &&
                    abs(pi2.pi.b) < coord_cap;

  if (fast) {
    // int64 inner loop; products stay below 2^62 under the guard above,
    // with the one wide spot (the norm of the quotient) done in 128 bits
    detail::I64Eis p1{static_cast<std::int64_t>(pi1.pi.a),
                      static_cast<std::int64_t>(pi1.pi.b)};
    detail::I64Eis p2{static_cast<std::int64_t>(pi2.pi.a),
                      static_cast<std::int64_t>(pi2.pi.b)};
    detail::I64Eis p1sq = detail::i64_mul(p1, p1);
    const std::int64_t p2r = static_cast<std::int64_t>(pi2.p);

    for (long h = 0; h <= bound; ++h) {
      const long ranks = 2 * h + 1;
      for (long zb = 0; zb < ranks; ++zb)
        for (long za = 0; za < ranks; ++za)
          for (long yb = 0; yb < ranks; ++yb)
            for (long ya = 0; ya < ranks; ++ya) {
              detail::I64Eis z{detail::coord_seq(za), detail::coord_seq(zb)};
              detail::I64Eis y{detail::coord_seq(ya), detail::coord_seq(yb)};
              std::int64_t mzy =
                  std::max({std::abs(z.a), std::abs(z.b), std::abs(y.a),
                            std::abs(y.b)});
              detail::I64Eis y3 = detail::i64_mul(y, detail::i64_mul(y, y));
              detail::I64Eis z3 = detail::i64_mul(z, detail::i64_mul(z, z));
              detail::I64Eis tail = detail::i64_add(
                  detail::i64_mul(p1, y3), detail::i64_mul(p1sq, z3));
              detail::I64Eis coef = detail::i64_scale(
                  3, detail::i64_mul(p1, detail::i64_mul(y, z)));
              for (long xb = 0; xb < ranks; ++xb)
                for (long xa = 0; xa < ranks; ++xa) {
                  detail::I64Eis x{detail::coord_seq(xa), detail::coord_seq(xb)};
                  std::int64_t m =
                      std::max({mzy, std::abs(x.a), std::abs(x.b)});
                  if (m != h) continue;  // earlier shells already visited
                  detail::I64Eis norm = detail::i64_sub(
                      detail::i64_add(
                          detail::i64_mul(x, detail::i64_mul(x, x)), tail),
                      detail::i64_mul(coef, x));
                  detail::I64Eis d;
                  if (!detail::i64_divide_exact(norm, p2, d)) continue;
                  if (d.a == 0 && d.b == 0) continue;
                  using W = __int128;
                  W nd = W(d.a) * d.a - W(d.a) * d.b + W(d.b) * d.b;
                  if (nd % 3 == 0) continue;
                  if (nd % p2r == 0) continue;
                  auto gamma = detail::eis_cube_root(
                      EisInt{Integer(d.a), Integer(d.b)});
                  if (!gamma) continue;
                  CubicRingElem alpha =
                      cubic_elem(EisInt{Integer(x.a), Integer(x.b)},
                                 EisInt{Integer(y.a), Integer(y.b)},
                                 EisInt{Integer(z.a), Integer(z.b)}, pi1);
                  if (!detail::alpha_valuation_shape_ok(alpha, *gamma))
                    continue;
                  if (visit(alpha, *gamma)) return true;
                }
            }
    }
    return false;
  }

  // arbitrary-precision fallback, same ordering
  const EisInt P1 = pi1.pi;
  const EisInt P1sq = P1 * P1;
  for (long h = 0; h <= bound; ++h) {
    const long ranks = 2 * h + 1;
    for (long zb = 0; zb < ranks; ++zb)
      for (long za = 0; za < ranks; ++za)
        for (long yb = 0; yb < ranks; ++yb)
          for (long ya = 0; ya < ranks; ++ya) {
            EisInt z{Integer(detail::coord_seq(za)),
                     Integer(detail::coord_seq(zb))};
            EisInt y{Integer(detail::coord_seq(ya)),
                     Integer(detail::coord_seq(yb))};
            long mzy = std::max({std::labs(detail::coord_seq(za)),
                                 std::labs(detail::coord_seq(zb)),
                                 std::labs(detail::coord_seq(ya)),
                                 std::labs(detail::coord_seq(yb))});
            EisInt tail = P1 * (y * y * y) + P1sq * (z * z * z);
            EisInt coef = EisInt(3) * P1 * (y * z);
            for (long xb = 0; xb < ranks; ++xb)
              for (long xa = 0; xa < ranks; ++xa) {
                long m = std::max({mzy, std::labs(detail::coord_seq(xa)),
                                   std::labs(detail::coord_seq(xb))});
                if (m != h) continue;
                EisInt x{Integer(detail::coord_seq(xa)),
                         Integer(detail::coord_seq(xb))};
                EisInt norm = x * x * x + tail - coef * x;
                if (detail::try_candidate(pi1, pi2, x, y, z, norm, visit))
                  return true;
              }
          }
  }
  return false;
}

inline CubicRingElem find_alpha(const EisPrime& pi1, const EisPrime& pi2,
                                long bound = kDefaultAlphaBound) {
  CubicRingElem out;
  bool found = scan_alpha(pi1, pi2, bound,
                          [&](const CubicRingElem& a, const EisInt&) {
                            out = a;
                            return true;
                          });
  if (!found)
    fail(errc::bound_exceeded,
         "no alpha of height <= " + std::to_string(bound));
  return out;
}

// ---- cube condition -------------------------------------------------------

namespace detail {

// class index of an O_k/(3 sqrt(-3)) residue: r + 3 s with the canonical
// (r, s), r in [0,3), s in [0,9)
inline int residue27_index(const EisInt& u) {
  auto [r, s] = eis_canon27(u);
  return static_cast<int>(r) + 3 * static_cast<int>(s);
}

inline EisInt residue27_rep(int idx) {
  return EisInt{Integer(idx % 3), Integer(idx / 3)};
}

struct CubeTable {
  // maps class of eta^3 in (O_k/(3 sqrt(-3)))[t]/(t^3 - pi1bar) to one eta
  std::vector<int> witness;  // index by cube class; -1 = no preimage

  static int key(int i0, int i1, int i2) { return i0 + 27 * (i1 + 27 * i2); }
};

// One table per residue class of pi1 mod (3 sqrt(-3)); normalized primes
// all share the class of 1.  Read-only after construction, shared across
// threads.
inline const CubeTable& cube_table(const EisInt& pi1) {
  static std::map<int, CubeTable> cache;
  static std::mutex mu;
  const int pcls = residue27_index(pi1);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(pcls);
  if (it != cache.end()) return it->second;
  CubeTable& tbl = cache[pcls];
  tbl.witness.assign(27 * 27 * 27, -1);
  const EisInt pr = residue27_rep(pcls);
  for (int i2 = 0; i2 < 27; ++i2)
    for (int i1 = 0; i1 < 27; ++i1)
      for (int i0 = 0; i0 < 27; ++i0) {
        EisInt x = residue27_rep(i0), y = residue27_rep(i1),
               z = residue27_rep(i2);
        // (x + y t + z t^2)^2 with t^3 = pi1bar
        EisInt s0 = x * x + EisInt(2) * pr * (y * z);
        EisInt s1 = EisInt(2) * (x * y) + pr * (z * z);
        EisInt s2 = EisInt(2) * (x * z) + y * y;
        // times (x + y t + z t^2)
        EisInt c0 = s0 * x + pr * (s1 * z + s2 * y);
        EisInt c1 = s0 * y + s1 * x + pr * (s2 * z);
        EisInt c2 = s0 * z + s1 * y + s2 * x;
        int k = CubeTable::key(residue27_index(c0), residue27_index(c1),
                               residue27_index(c2));
        if (tbl.witness[static_cast<size_t>(k)] < 0)
          tbl.witness[static_cast<size_t>(k)] = CubeTable::key(i0, i1, i2);
      }
  return tbl;
}

}  // namespace detail

// Witness eta with eta^3 = theta mod (3 sqrt(-3)), coordinate-wise in the
// order basis 1, t, t^2; nullopt when no residue class cubes to theta.
inline std::optional<CubicRingElem> cube_condition(const CubicRingElem& theta) {
  if (eis_norm(cubic_norm(theta)) % 3 == 0)
    fail(errc::not_coprime_to_three,
         "cube condition requires theta prime to 3");
  const detail::CubeTable& tbl = detail::cube_table(theta.pi1.pi);
  int k = detail::CubeTable::key(detail::residue27_index(theta.x),
                                 detail::residue27_index(theta.y),
                                 detail::residue27_index(theta.z));
  int w = tbl.witness[static_cast<size_t>(k)];
  if (w < 0) return std::nullopt;
  return cubic_elem(detail::residue27_rep(w % 27),
                    detail::residue27_rep((w / 27) % 27),
                    detail::residue27_rep(w / (27 * 27)), theta.pi1);
}

// ---- theta certificates ---------------------------------------------------

struct ThetaCertificate {
  CubicRingElem alpha;
  int e = 0;                  // power of z3 in theta
  CubicRingElem theta;        // z3^e alpha^2 tau(alpha)
  CubicRingElem eta;          // cube-condition witness
  EisInt beta_norm_witness;   // gamma with cubic_norm(alpha) = pi2 gamma^3
  EisPrime pi2;
};

inline CubicRingElem theta_of(const CubicRingElem& alpha, int e) {
  CubicRingElem th =
      cubic_mul(cubic_mul(alpha, alpha), tau_conjugate(alpha));
  EisInt u = eis_pow(EisInt{0, 1}, static_cast<unsigned>(e));
  th.x = u * th.x;
  th.y = u * th.y;
  th.z = u * th.z;
  return th;
}

// skip > 0 discards that many (alpha, e) successes first, giving access
// to later certificates for independence checks.
inline ThetaCertificate build_theta_certificate(const EisPrime& pi1,
                                                const EisPrime& pi2,
                                                long bound = kDefaultAlphaBound,
                                                long skip = 0) {
  std::optional<ThetaCertificate> out;
  long seen = 0;
  scan_alpha(pi1, pi2, bound, [&](const CubicRingElem& alpha, const EisInt& gamma) {
    for (int e = 0; e < 3; ++e) {
      CubicRingElem th = theta_of(alpha, e);
      auto eta = cube_condition(th);
      if (!eta) continue;
      if (seen++ < skip) continue;
      out = ThetaCertificate{alpha, e, th, *eta, gamma, pi2};
      return true;
    }
    return false;
  });
  if (!out)
    fail(errc::bound_exceeded,
         "no theta certificate within height " + std::to_string(bound));
  // invariant replay before handing the certificate out
  const ThetaCertificate& c = *out;
  EisInt na = cubic_norm(c.alpha);
  EisInt g3 = c.beta_norm_witness * c.beta_norm_witness * c.beta_norm_witness;
  if (na != pi2.pi * g3)
    fail(errc::not_a_cube, "certificate norm equation failed");
  EisInt nt = cubic_norm(c.theta);
  if (nt != na * na * na)
    fail(errc::not_a_cube, "certificate theta norm failed");
  return c;
}

// ---- symbol evaluation ----------------------------------------------------

namespace detail {

inline void require_triple_admissible(const EisPrime& a, const EisPrime& b,
                                      const EisPrime& c) {
  const EisPrime* P[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i) {
    if (!P[i]->nine_admissible)
      fail(errc::not_admissible, "triple symbol needs norms = 1 mod 9");
    for (int j = i + 1; j < 3; ++j)
      if (*P[i] == *P[j])
        fail(errc::distinctness_violated,
             "triple symbol needs pairwise distinct primes");
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && cubic_character(P[i]->pi, *P[j]) != 0)
        fail(errc::not_admissible,
             "triple symbol needs all pairwise cubic characters trivial");
}

inline RFElem theta_residue(const ThetaCertificate& cert,
                            const ResidueField& F, const RFElem& root) {
  RFElem xb = reduce(cert.theta.x, F);
  RFElem yb = reduce(cert.theta.y, F);
  RFElem zb = reduce(cert.theta.z, F);
  return F.add(xb, F.add(F.mul(yb, root), F.mul(zb, F.mul(root, root))));
}

}  // namespace detail

// Exponent of the symbol from an explicit certificate and an explicit
// cube root of pi1 in the residue field of pi3.
inline int cubic_symbol_exponent_at_root(const ThetaCertificate& cert,
                                         const ResidueField& F,
                                         const RFElem& root) {
  RFElem th = detail::theta_residue(cert, F, root);
  if (F.is_zero(th))
    fail(errc::theta_vanishes,
         "theta reduces to zero at pi3; use another certificate");
  return cubic_character_in(F, th);
}

inline SymbolValue triple_cubic_symbol(const EisPrime& pi1, const EisPrime& pi2,
                                       const EisPrime& pi3,
                                       long bound = kDefaultAlphaBound) {
  detail::require_triple_admissible(pi1, pi2, pi3);
  ResidueField F = residue_field_of(pi3);
  RFElem pibar = reduce(pi1.pi, F);
  RFElem root = cube_root_in_field(pibar, F);
  for (long skip = 0; skip < 8; ++skip) {
    ThetaCertificate cert = build_theta_certificate(pi1, pi2, bound, skip);
    try {
      int t = cubic_symbol_exponent_at_root(cert, F, root);
      return make_symbol(3, t);
    } catch (const error& e) {
      if (e.code() != errc::theta_vanishes) throw;
      // pi3 divides this theta; the next certificate is coprime to it
    }
  }
  fail(errc::theta_vanishes,
       "every candidate certificate vanished at pi3; raise the bound");
}

// Complete-splitting test for pi3 in the degree-27 tower determined by
// the certificate: all three Kummer generators must be cubes at pi3.
inline bool cubic_splitting_oracle(const ThetaCertificate& cert,
                                   const EisPrime& pi3) {
  detail::require_triple_admissible(cert.alpha.pi1, cert.pi2, pi3);
  ResidueField F = residue_field_of(pi3);
  if (cubic_character(cert.alpha.pi1.pi, pi3) != 0) return false;
  if (cubic_character(cert.pi2.pi, pi3) != 0) return false;
  RFElem root = cube_root_in_field(reduce(cert.alpha.pi1.pi, F), F);
  return cubic_symbol_exponent_at_root(cert, F, root) == 0;
}

}  // namespace msym
