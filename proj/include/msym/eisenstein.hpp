#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msym/arith.hpp"
#include "msym/errors.hpp"

namespace msym {

/// a + b*z3 with z3^2 = -1 - z3 (z3 a primitive cube root of unity).
struct EisInt {
  Integer a{0}, b{0};

  EisInt() = default;
  EisInt(Integer a_, Integer b_) : a(std::move(a_)), b(std::move(b_)) {}
  EisInt(long v) : a(v), b(0) {}

  friend EisInt operator+(const EisInt& u, const EisInt& v) {
    return {u.a + v.a, u.b + v.b};
  }
  friend EisInt operator-(const EisInt& u, const EisInt& v) {
    return {u.a - v.a, u.b - v.b};
  }
  friend EisInt operator-(const EisInt& u) { return {-u.a, -u.b}; }
  friend EisInt operator*(const EisInt& u, const EisInt& v) {
    return {u.a * v.a - u.b * v.b, u.a * v.b + u.b * v.a - u.b * v.b};
  }
  friend bool operator==(const EisInt& u, const EisInt& v) {
    return u.a == v.a && u.b == v.b;
  }
  friend bool operator!=(const EisInt& u, const EisInt& v) { return !(u == v); }
};

inline EisInt eis_mul(const EisInt& u, const EisInt& v) { return u * v; }
inline EisInt eis_add(const EisInt& u, const EisInt& v) { return u + v; }
inline EisInt eis_sub(const EisInt& u, const EisInt& v) { return u - v; }

inline Integer eis_norm(const EisInt& u) {
  return u.a * u.a - u.a * u.b + u.b * u.b;
}

/// Complex conjugation, z3 -> z3^2.
inline EisInt eis_conj(const EisInt& u) { return {u.a - u.b, -u.b}; }

inline const std::array<EisInt, 6>& eis_units() {
  static const std::array<EisInt, 6> units = {
      EisInt{1, 0},  EisInt{-1, 0}, EisInt{0, 1},
      EisInt{0, -1}, EisInt{-1, -1}, EisInt{1, 1}};
  return units;
}

inline bool eis_is_unit(const EisInt& u) { return eis_norm(u) == 1; }

inline EisInt eis_pow(EisInt u, unsigned e) {
  EisInt r{1, 0};
  for (; e > 0; --e) r = r * u;
  return r;
}

/// Exact quotient u/v in Z[z3], or nullopt if v does not divide u.
inline std::optional<EisInt> eis_divide_exact(const EisInt& u, const EisInt& v) {
  Integer nv = eis_norm(v);
  if (nv == 0) return std::nullopt;
  EisInt w = u * eis_conj(v);
  if (w.a % nv != 0 || w.b % nv != 0) return std::nullopt;
  return EisInt{w.a / nv, w.b / nv};
}

/// Canonical representative of u mod (3*sqrt(-3)); the ideal is the lattice
/// with basis (3,6), (0,9) in (a,b)-coordinates (determinant 27).
inline std::pair<Integer, Integer> eis_canon27(const EisInt& u) {
  Integer r = mod_floor(u.a, 3);
  Integer q = (u.a - r) / 3;
  Integer s = mod_floor(u.b - 6 * q, 9);
  return {r, s};
}

inline bool eis_is_one_mod_3sqrtm3(const EisInt& u) {
  auto [r, s] = eis_canon27(u);
  return r == 1 && s == 0;
}

/// Coordinate rank in the canonical search order 0, 1, -1, 2, -2, ...
inline Integer coord_rank(const Integer& v) {
  if (v == 0) return 0;
  return 2 * abs(v) - (v > 0 ? 1 : 0);
}

/// Key (rank(b), rank(a)): rational elements sort before z3-multiples.
inline bool eis_order_less(const EisInt& u, const EisInt& v) {
  Integer ub = coord_rank(u.b), vb = coord_rank(v.b);
  if (ub != vb) return ub < vb;
  return coord_rank(u.a) < coord_rank(v.a);
}

enum class PrimeKind { split, inert };

/// A prime of Z[z3] not above 3, with its canonical generator. For norm = 1
/// mod 9 the generator is the unique unit multiple = 1 mod (3*sqrt(-3));
/// otherwise (auxiliary primes) it is the minimal associate in the canonical
/// coordinate order, and nine_admissible is false.
struct EisPrime {
  EisInt pi;
  Integer q;             // norm
  Integer p;             // rational prime below
  PrimeKind kind = PrimeKind::split;
  bool nine_admissible = true;

  friend bool operator==(const EisPrime& A, const EisPrime& B) {
    return A.pi == B.pi;
  }
};

namespace detail {

inline bool same_ideal(const EisInt& u, const EisInt& v) {
  auto q = eis_divide_exact(u, v);
  return q && eis_is_unit(*q);
}

// classification of a prime element not above 3; throws if not prime
inline std::pair<PrimeKind, Integer> classify_prime(const EisInt& gen) {
  Integer n = eis_norm(gen);
  if (n <= 1) fail(errc::not_prime, "unit or zero is not prime");
  if (n % 3 == 0) fail(errc::ramified, "generator lies above 3");
  if (is_prime(n)) {
    if (n % 3 != 1) fail(errc::not_prime, "split norms are 1 mod 3");
    return {PrimeKind::split, n};
  }
  Integer p = isqrt_exact(n);
  if (p > 0 && is_prime(p) && p % 3 == 2 && gen.a % p == 0 && gen.b % p == 0)
    return {PrimeKind::inert, p};
  fail(errc::not_prime, "generator is not prime in Z[z3]");
}

inline EisPrime make_normalized(const EisInt& gen, bool require_nine) {
  auto [kind, p] = classify_prime(gen);
  Integer n = eis_norm(gen);
  EisPrime P;
  P.q = n;
  P.p = p;
  P.kind = kind;
  if (n % 9 == 1) {
    P.nine_admissible = true;
    int hits = 0;
    for (const auto& u : eis_units()) {
      EisInt cand = u * gen;
      if (eis_is_one_mod_3sqrtm3(cand)) {
        P.pi = cand;
        ++hits;
      }
    }
    if (hits != 1) fail(errc::not_prime, "normalization not unique");  // unreachable for primes
  } else {
    if (require_nine)
      fail(errc::not_nine_admissible, "norm is not 1 mod 9");
    P.nine_admissible = false;
    EisInt best = gen;
    for (const auto& u : eis_units()) {
      EisInt cand = u * gen;
      if (eis_order_less(cand, best)) best = cand;
    }
    P.pi = best;
  }
  return P;
}

inline EisInt split_generator(const Integer& p) {
  // a^2 - ab + b^2 = p; with a = (b + s)/2, s^2 = 4p - 3b^2
  for (Integer b = 1; 3 * b * b <= 4 * p; ++b) {
    Integer s = isqrt_exact(4 * p - 3 * b * b);
    if (s < 0) continue;
    if ((b + s) % 2 == 0) {
      EisInt g{(b + s) / 2, b};
      if (eis_norm(g) == p) return g;
    }
  }
  fail(errc::not_prime, "no split generator found");
}

}  // namespace detail

/// Canonical generator for the prime above a rational prime, or for an
/// explicit generator. Requires norm = 1 mod 9 (the unit multiple that is
/// 1 mod (3 sqrt(-3)) only exists there).
inline EisPrime normalize_prime(const EisInt& gen) {
  return detail::make_normalized(gen, /*require_nine=*/true);
}

inline EisPrime normalize_prime(const Integer& p) {
  if (!is_prime(p)) fail(errc::not_prime, "p is not prime");
  if (p == 3) fail(errc::ramified, "3 is ramified");
  if (p % 3 == 2) return normalize_prime(EisInt{p, 0});
  return normalize_prime(detail::split_generator(p));
}

/// Weak normalization used for auxiliary primes (norm = 4 or 7 mod 9).
inline EisPrime normalize_prime_weak(const EisInt& gen) {
  return detail::make_normalized(gen, /*require_nine=*/false);
}

/// True iff some member has norm = 4 or 7 mod 9 (the obstruction group for
/// the cubic cyclotomic field is trivial exactly then).
inline bool b_s_vanishes(const std::vector<EisPrime>& S) {
  for (const auto& P : S) {
    if (P.q % 3 == 0) fail(errc::ramified, "member above 3");
    Integer r = P.q % 9;
    if (r == 4 || r == 7) return true;
  }
  return false;
}

/// Smallest split prime whose norm is 4 or 7 mod 9 (scan p = 1 mod 3 upward).
inline EisPrime auxiliary_prime() {
  for (Integer p = 7;; ++p) {
    if (p % 3 != 1 || !is_prime(p)) continue;
    Integer r = p % 9;
    if (r == 4 || r == 7) return normalize_prime_weak(detail::split_generator(p));
  }
}

/// Element of the residue field: c + d*T with T the class of z3 (inert), or
/// just c (split, d = 0). Coordinates reduced into [0, p).
struct RFElem {
  Integer c{0}, d{0};
  friend bool operator==(const RFElem& u, const RFElem& v) {
    return u.c == v.c && u.d == v.d;
  }
  friend bool operator!=(const RFElem& u, const RFElem& v) { return !(u == v); }
};

/// O_k / P for P not above 3. Split: F_p with omega the root of T^2+T+1
/// annihilating pi. Inert: F_{p^2} as pairs modulo T^2+T+1, omega = T.
struct ResidueField {
  Integer p;       // rational characteristic
  Integer q;       // field size, p or p^2
  PrimeKind kind = PrimeKind::split;
  RFElem omega;    // image of z3

  RFElem add(const RFElem& u, const RFElem& v) const {
    return {mod_floor(u.c + v.c, p), mod_floor(u.d + v.d, p)};
  }
  RFElem sub(const RFElem& u, const RFElem& v) const {
    return {mod_floor(u.c - v.c, p), mod_floor(u.d - v.d, p)};
  }
  RFElem mul(const RFElem& u, const RFElem& v) const {
    // same multiplication rule as Z[z3], taken mod p
    return {mod_floor(u.c * v.c - u.d * v.d, p),
            mod_floor(u.c * v.d + u.d * v.c - u.d * v.d, p)};
  }
  RFElem pow(RFElem u, Integer e) const {
    RFElem r{1, 0};
    while (e > 0) {
      if (bit_test(e, 0)) r = mul(r, u);
      u = mul(u, u);
      e >>= 1;
    }
    return r;
  }
  RFElem inv(const RFElem& u) const { return pow(u, q - 2); }
  RFElem one() const { return {1, 0}; }
  RFElem zero() const { return {0, 0}; }
  bool is_zero(const RFElem& u) const { return u.c == 0 && u.d == 0; }
};

inline ResidueField residue_field_of(const EisPrime& P) {
  if (P.q % 3 == 0) fail(errc::ramified, "no residue field above 3");
  ResidueField F;
  F.p = P.p;
  F.kind = P.kind;
  if (P.kind == PrimeKind::inert) {
    F.q = P.p * P.p;
    F.omega = {0, 1};
  } else {
    F.q = P.p;
    // omega = -a/b mod p annihilates pi = a + b*z3; b is invertible since
    // the norm is p, not p^2
    Integer binv = mod_pow(mod_floor(P.pi.b, P.p), P.p - 2, P.p);
    Integer om = mod_floor(-P.pi.a * binv, P.p);
    F.omega = {om, 0};
  }
  return F;
}

inline RFElem reduce(const EisInt& u, const ResidueField& F) {
  if (F.kind == PrimeKind::inert)
    return {mod_floor(u.a, F.p), mod_floor(u.b, F.p)};
  return {mod_floor(u.a + u.b * F.omega.c, F.p), 0};
}

/// Exponent t with x^{(q-1)/3} = omega^t for nonzero x.
inline int cubic_character_in(const ResidueField& F, const RFElem& x) {
  if (F.is_zero(x)) fail(errc::divides_argument, "character of zero");
  RFElem v = F.pow(x, (F.q - 1) / 3);
  if (v == F.one()) return 0;
  if (v == F.omega) return 1;
  if (v == F.mul(F.omega, F.omega)) return 2;
  fail(errc::not_a_cube, "internal: character value is not a cube root of unity");
}

inline int cubic_character(const EisInt& u, const EisPrime& P) {
  ResidueField F = residue_field_of(P);
  return cubic_character_in(F, reduce(u, F));
}

namespace detail {

// encoding order on field elements: (d, c) lexicographic
inline bool rf_less(const RFElem& u, const RFElem& v) {
  if (u.d != v.d) return u.d < v.d;
  return u.c < v.c;
}

inline RFElem noncube_seed(const ResidueField& F) {
  // smallest non-cube in the encoding order; rationals are skipped for inert
  // fields (they are always cubes there)
  if (F.kind == PrimeKind::split) {
    for (Integer c = 2; c < F.p; ++c) {
      RFElem g{c, 0};
      if (F.pow(g, (F.q - 1) / 3) != F.one()) return g;
    }
  } else {
    for (Integer d = 1; d < F.p; ++d)
      for (Integer c = 0; c < F.p; ++c) {
        RFElem g{c, d};
        if (F.pow(g, (F.q - 1) / 3) != F.one()) return g;
      }
  }
  fail(errc::not_a_cube, "internal: no non-cube found");
}

}  // namespace detail

/// Discrete cube root. q != 1 mod 9 uses a single exponentiation; q = 1 mod 9
/// runs the Adleman-Manders-Miller loop with a deterministic non-cube seed.
/// Returns the canonical smallest of the three roots in the encoding order.
inline RFElem cube_root_in_field(const RFElem& a, const ResidueField& F) {
  if (F.is_zero(a)) fail(errc::not_a_cube, "cube root of zero");
  if (F.pow(a, (F.q - 1) / 3) != F.one()) fail(errc::not_a_cube, "not a cube");
  RFElem r;
  Integer qm = F.q % 9;
  if (qm == 4) {
    r = F.pow(a, (2 * F.q + 1) / 9);
  } else if (qm == 7) {
    r = F.pow(a, (F.q + 2) / 9);
  } else {
    // q = 1 mod 9
    Integer t = F.q - 1;
    unsigned s = 0;
    while (t % 3 == 0) {
      t /= 3;
      ++s;
    }
    RFElem g = detail::noncube_seed(F);
    RFElem K = F.pow(g, t);           // order exactly 3^s
    RFElem h = F.pow(a, t);           // in <K>, with 3 | log
    RFElem zeta = K;
    for (unsigned i = 0; i + 1 < s; ++i) zeta = F.pow(zeta, 3);
    Integer j = 0;
    Integer pw = 1;  // 3^i
    for (unsigned i = 0; i < s; ++i) {
      RFElem probe = F.mul(h, F.inv(F.pow(K, j)));
      for (unsigned k = 0; k + 1 + i < s; ++k) probe = F.pow(probe, 3);
      int digit;
      if (probe == F.one()) digit = 0;
      else if (probe == zeta) digit = 1;
      else digit = 2;
      j += digit * pw;
      pw *= 3;
    }
    if (j % 3 != 0) fail(errc::not_a_cube, "internal: discrete log not divisible");
    Integer jp = j / 3;
    Integer w = mod_floor(t, 3) == 1 ? 1 : 2;  // w = t^{-1} mod 3
    Integer u = (t * w - 1) / 3;
    r = F.mul(F.pow(K, jp * w), F.pow(F.inv(a), u));
  }
  // canonicalize over the three roots
  RFElem best = r;
  RFElem cur = r;
  for (int i = 0; i < 2; ++i) {
    cur = F.mul(cur, F.omega);
    if (detail::rf_less(cur, best)) best = cur;
  }
  return best;
}

/// All three cube roots (root-choice independence checks).
inline std::array<RFElem, 3> cube_roots_in_field(const RFElem& a,
                                                 const ResidueField& F) {
  RFElem r = cube_root_in_field(a, F);
  return {r, F.mul(r, F.omega), F.mul(F.mul(r, F.omega), F.omega)};
}

// ---- textual form "a+b*w" ----

inline std::string to_string(const EisInt& u) {
  if (u.b == 0) return u.a.str();
  std::string bs;
  if (u.b == 1) bs = "w";
  else if (u.b == -1) bs = "-w";
  else bs = u.b.str() + "*w";
  if (u.a == 0) return bs;
  if (u.b > 0) return u.a.str() + "+" + bs;
  return u.a.str() + bs;
}

/// Accepts "a", "b*w", "a+b*w", "a-b*w", with optional spaces and bare "w".
inline EisInt parse_eisint(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(errc::parse_error, "empty Eisenstein literal");
  auto read_term = [&](size_t& i, Integer& a, Integer& b) {
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    size_t start = i;
    std::string digits;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    bool has_w = false;
    if (i < s.size() && (s[i] == 'w' || s[i] == '*')) {
      if (s[i] == '*') {
        ++i;
        if (i >= s.size() || s[i] != 'w') fail(errc::parse_error, "expected w after *");
      }
      ++i;
      has_w = true;
    }
    if (digits.empty() && !has_w) fail(errc::parse_error, "bad term at offset " + std::to_string(start));
    Integer v = digits.empty() ? Integer(1) : Integer(digits);
    if (has_w) b += sign * v;
    else a += sign * v;
  };
  Integer a = 0, b = 0;
  size_t i = 0;
  read_term(i, a, b);
  while (i < s.size()) read_term(i, a, b);
  return {a, b};
}

}  // namespace msym
