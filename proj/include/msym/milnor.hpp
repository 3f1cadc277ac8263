#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "msym/arith.hpp"
#include "msym/errors.hpp"
#include "msym/magnus.hpp"
#include "msym/symbol.hpp"

namespace msym {

// Link-type group presentation: generators x1..xr with relators
//   relator_i = x_i^{N_i - 1} [x_i, y_i]
// where N_i is the norm attached to generator i and y_i its longitude
// word.  S selects the generator indices under study.
struct LinkPresentation {
  Integer l = 3;
  Integer m = 3;
  std::vector<Integer> norms;
  std::vector<GroupWord> frobenius_words;
  std::vector<int> S;

  int r() const { return static_cast<int>(norms.size()); }

  GroupWord relator(int i) const;  // 1-based
};

namespace detail {

inline bool is_power_of(const Integer& m, const Integer& l) {
  Integer v = m;
  while (v % l == 0) v /= l;
  return v == 1;
}

inline void check_word_indices(const GroupWord& w, int r, const char* who) {
  for (const auto& [g, e] : w) {
    if (g < 1 || g > r)
      fail(errc::index_out_of_range,
           std::string(who) + ": generator index outside 1..r");
    (void)e;
  }
}

}  // namespace detail

inline void validate(const LinkPresentation& pres) {
  if (!is_prime(pres.l))
    fail(errc::not_prime, "presentation: l must be prime");
  if (pres.m < 2 || !detail::is_power_of(pres.m, pres.l))
    fail(errc::invalid_modulus, "presentation: m must be a power of l, >= 2");
  const int r = pres.r();
  if (r < 1) fail(errc::length_out_of_range, "presentation: no generators");
  if (static_cast<int>(pres.frobenius_words.size()) != r)
    fail(errc::length_out_of_range,
         "presentation: need one longitude word per generator");
  for (const Integer& N : pres.norms) {
    if (N < 2)
      fail(errc::invalid_modulus, "presentation: norms must be >= 2");
    if (mod_floor(N - 1, pres.m) != 0)
      fail(errc::invalid_modulus,
           "presentation: every norm must be 1 mod m");
  }
  for (const GroupWord& y : pres.frobenius_words)
    detail::check_word_indices(y, r, "presentation");
  for (int i : pres.S)
    if (i < 1 || i > r)
      fail(errc::index_out_of_range, "presentation: S outside 1..r");
}

inline GroupWord LinkPresentation::relator(int i) const {
  if (i < 1 || i > r())
    fail(errc::index_out_of_range, "relator: index outside 1..r");
  GroupWord w;
  w.push_back(Letter{i, norms[static_cast<size_t>(i - 1)] - 1});
  GroupWord x1{Letter{i, 1}};
  GroupWord c = word_commutator(x1, frobenius_words[static_cast<size_t>(i - 1)]);
  w.insert(w.end(), c.begin(), c.end());
  return w;
}

namespace detail {

inline void check_index_in_S(const LinkPresentation& pres,
                             const MultiIndex& I) {
  for (int i : I) {
    if (i < 1 || i > pres.r())
      fail(errc::index_out_of_range, "index outside 1..r");
    if (std::find(pres.S.begin(), pres.S.end(), i) == pres.S.end())
      fail(errc::index_not_in_s, "index outside designated subset S");
  }
}

inline int val_at(const Integer& l, Integer n) {
  int v = 0;
  while (n != 0 && n % l == 0) {
    n /= l;
    ++v;
  }
  return v;
}

}  // namespace detail

// l^e with e the largest exponent such that every norm indexed by I is
// 1 mod l^e.
inline Integer m_sub_I(const LinkPresentation& pres, const MultiIndex& I) {
  detail::check_index_in_S(pres, I);
  if (I.empty()) fail(errc::length_out_of_range, "m_sub_I: empty index");
  int e = -1;
  for (int i : I) {
    int v = detail::val_at(pres.l, pres.norms[static_cast<size_t>(i - 1)] - 1);
    if (e < 0 || v < e) e = v;
  }
  Integer out = 1;
  for (int j = 0; j < e; ++j) out *= pres.l;
  return out;
}

// mu_m(I): Magnus coefficient of the last index's longitude word at the
// truncated index I' = (i1..i_{n-1}); zero for singletons by convention.
inline Integer milnor_number(const LinkPresentation& pres,
                             const MultiIndex& I) {
  detail::check_index_in_S(pres, I);
  if (I.empty()) fail(errc::length_out_of_range, "milnor_number: empty index");
  if (I.size() == 1) return 0;
  MultiIndex head(I.begin(), I.end() - 1);
  const GroupWord& y = pres.frobenius_words[static_cast<size_t>(I.back() - 1)];
  return fox_coefficient(y, head, pres.m);
}

// P(I): every cyclic permutation of every nonempty proper subsequence of
// I, as a deduplicated set.
inline std::vector<MultiIndex> cyclic_proper_subsequences(const MultiIndex& I) {
  const int n = static_cast<int>(I.size());
  std::set<MultiIndex> out;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    MultiIndex J;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) J.push_back(I[static_cast<size_t>(j)]);
    MultiIndex rot = J;
    for (size_t k = 0; k < J.size(); ++k) {
      out.insert(rot);
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
  }
  return {out.begin(), out.end()};
}

// Divisor d of m generating the indeterminacy ideal Delta_m(I); d = 0
// encodes the zero ideal.
inline Integer indeterminacy(const LinkPresentation& pres,
                             const MultiIndex& I) {
  detail::check_index_in_S(pres, I);
  const int n = static_cast<int>(I.size());
  Integer mI = m_sub_I(pres, I);
  Integer g = pres.m;
  for (int a = 1; a < n; ++a)
    g = gcd(g, mod_floor(binomial_integer(mI, a), pres.m));
  for (const MultiIndex& J : cyclic_proper_subsequences(I))
    g = gcd(g, milnor_number(pres, J));
  return g == pres.m ? Integer(0) : g;
}

struct MilnorResult {
  MultiIndex I;
  Integer value = 0;    // mu_m(I)
  Integer delta = 0;    // divisor generating Delta_m(I); 0 = zero ideal
  Integer reduced = 0;  // value mod (delta)
};

inline MilnorResult milnor_invariant(const LinkPresentation& pres,
                                     const MultiIndex& I) {
  detail::check_index_in_S(pres, I);
  Integer mI = m_sub_I(pres, I);
  if (Integer(I.size()) < 2 || Integer(I.size()) > mI)
    fail(errc::length_out_of_range,
         "milnor_invariant: need 2 <= |I| <= m_I = " + mI.str());
  MilnorResult res;
  res.I = I;
  res.value = milnor_number(pres, I);
  res.delta = indeterminacy(pres, I);
  res.reduced = res.delta == 0 ? res.value : mod_floor(res.value, res.delta);
  return res;
}

// n x n upper unipotent matrix over (Z/m)/(delta): entry (a, b+1) is
// mu_m(i_a..i_b; w).  Row/column indices are 0-based in the returned
// matrix.
using UnipotentMatrix = std::vector<std::vector<Integer>>;

inline UnipotentMatrix unipotent_rep(const LinkPresentation& pres,
                                     const MultiIndex& I, const GroupWord& w) {
  detail::check_index_in_S(pres, I);
  detail::check_word_indices(w, pres.r(), "unipotent_rep");
  const int n = static_cast<int>(I.size());
  if (n < 1) fail(errc::length_out_of_range, "unipotent_rep: empty index");
  Integer d = indeterminacy(pres, I);
  if (d == 1)
    fail(errc::unit_indeterminacy,
         "unipotent_rep: indeterminacy ideal is the whole ring");
  const Integer dd = d == 0 ? pres.m : d;

  NcSeries s = expand(w, pres.m, n - 1);
  UnipotentMatrix M(static_cast<size_t>(n),
                    std::vector<Integer>(static_cast<size_t>(n), Integer(0)));
  for (int a = 0; a < n; ++a) M[static_cast<size_t>(a)][static_cast<size_t>(a)] = 1;
  for (int a = 1; a <= n - 1; ++a) {
    for (int b = a; b <= n - 1; ++b) {
      MultiIndex sub(I.begin() + (a - 1), I.begin() + b);
      M[static_cast<size_t>(a - 1)][static_cast<size_t>(b)] =
          mod_floor(s.at(sub), dd);
    }
  }
  return M;
}

inline UnipotentMatrix unipotent_mul(const UnipotentMatrix& A,
                                     const UnipotentMatrix& B,
                                     const Integer& dd) {
  const size_t n = A.size();
  UnipotentMatrix C(n, std::vector<Integer>(n, Integer(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (A[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j)
        C[i][j] = mod_floor(C[i][j] + A[i][k] * B[k][j], dd);
    }
  return C;
}

// Condition for the n-tuple symbol to be well-defined: the binomials
// C(m_I, j) vanish mod m for 1 <= j < n, and mu_m kills every cyclic
// permutation of every proper subsequence.
inline bool check_condition_31(const LinkPresentation& pres,
                               const MultiIndex& I) {
  detail::check_index_in_S(pres, I);
  const int n = static_cast<int>(I.size());
  Integer mI = m_sub_I(pres, I);
  for (int j = 1; j < n; ++j)
    if (mod_floor(binomial_integer(mI, j), pres.m) != 0) return false;
  for (const MultiIndex& J : cyclic_proper_subsequences(I))
    if (milnor_number(pres, J) != 0) return false;
  return true;
}

struct TupleSymbol {
  SymbolValue value;          // zeta_m^{mu_m(I)}
  Integer massey_exponent;    // (-1)^n mu_m(I) mod m
};

inline TupleSymbol tuple_symbol(const LinkPresentation& pres,
                                const MultiIndex& I) {
  if (!check_condition_31(pres, I))
    fail(errc::assumption_violated,
         "tuple_symbol: binomial/vanishing assumptions fail for this index");
  const int n = static_cast<int>(I.size());
  Integer mu = milnor_number(pres, I);
  TupleSymbol out;
  out.value = make_symbol(pres.m, mu);
  out.massey_exponent = mod_floor(n % 2 == 0 ? mu : -mu, pres.m);
  return out;
}

// Shuffle relation check: sum of reduced invariants over proper shuffles
// of I and J, each extended by i, must vanish modulo the gcd of the
// indeterminacy divisors (with divisor 0 treated as gcd-neutral).
inline bool verify_shuffle_relation(const LinkPresentation& pres,
                                    const MultiIndex& I, const MultiIndex& J,
                                    int i) {
  detail::check_index_in_S(pres, I);
  detail::check_index_in_S(pres, J);
  detail::check_index_in_S(pres, {i});
  MultiIndex all = I;
  all.insert(all.end(), J.begin(), J.end());
  all.push_back(i);
  Integer mIJi = m_sub_I(pres, all);
  if (Integer(I.size() + J.size()) > mIJi - 1)
    fail(errc::hypothesis_violated,
         "shuffle relation needs |I| + |J| <= m_I - 1 = " + Integer(mIJi - 1).str());
  Integer sum = 0;
  Integer g = 0;
  for (const MultiIndex& H : proper_shuffles(I, J)) {
    MultiIndex Hi = H;
    Hi.push_back(i);
    sum = mod_floor(sum + milnor_number(pres, Hi), pres.m);
    g = gcd(g, indeterminacy(pres, Hi));
  }
  if (g == 0) return sum == 0;
  return mod_floor(sum, g) == 0;
}

}  // namespace msym
