#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msym/arith.hpp"
#include "msym/errors.hpp"

namespace msym {

// One syllable of a group word: generator index (1-based) raised to an
// integer exponent.  Exponents may be negative and arbitrarily large.
struct Letter {
  int gen = 0;
  Integer exp = 1;

  bool operator==(const Letter&) const = default;
};

// A word in the free group on x1..xN, stored as a syllable sequence.
// Adjacent syllables need not be reduced.
using GroupWord = std::vector<Letter>;

// A sequence of generator indices labelling one noncommutative monomial
// X_{i1} X_{i2} ... X_{in}.
using MultiIndex = std::vector<int>;

inline GroupWord word_inverse(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back(Letter{it->gen, -it->exp});
  return out;
}

inline GroupWord word_concat(const GroupWord& u, const GroupWord& v) {
  GroupWord out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

// [u, v] = u v u^-1 v^-1
inline GroupWord word_commutator(const GroupWord& u, const GroupWord& v) {
  GroupWord out = u;
  out.insert(out.end(), v.begin(), v.end());
  GroupWord ui = word_inverse(u);
  out.insert(out.end(), ui.begin(), ui.end());
  GroupWord vi = word_inverse(v);
  out.insert(out.end(), vi.begin(), vi.end());
  return out;
}

// Truncated Magnus series over Z/m: a finite sum of monomials in the
// noncommuting variables X_i with coefficients in Z/m, all terms of
// degree <= D.  m = 0 means integer coefficients (no reduction).
struct NcSeries {
  Integer m = 0;
  int degree_cap = 0;
  std::map<MultiIndex, Integer> coeff;

  Integer at(const MultiIndex& I) const {
    auto it = coeff.find(I);
    return it == coeff.end() ? Integer(0) : it->second;
  }
};

namespace detail {

inline Integer reduce_coeff(const Integer& c, const Integer& m) {
  return m == 0 ? c : mod_floor(c, m);
}

// Series for one syllable x_g^e truncated at degree D:
//   (1 + X_g)^e = sum_k C(e, k) X_g^k
// valid for negative e via the generalized binomial, which still has
// integer values.
inline void append_letter(NcSeries& s, int gen, const Integer& e) {
  const int D = s.degree_cap;
  std::vector<Integer> bin(static_cast<size_t>(D) + 1);
  for (int k = 0; k <= D; ++k)
    bin[static_cast<size_t>(k)] =
        reduce_coeff(binomial_integer(e, k), s.m);

  std::map<MultiIndex, Integer> out;
  for (const auto& [I, c] : s.coeff) {
    const int room = D - static_cast<int>(I.size());
    MultiIndex J = I;
    for (int k = 0; k <= room; ++k) {
      if (k > 0) J.push_back(gen);
      const Integer& b = bin[static_cast<size_t>(k)];
      if (b == 0) continue;
      Integer& slot = out[J];
      slot = reduce_coeff(slot + c * b, s.m);
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) it = out.erase(it);
    else ++it;
  }
  s.coeff = std::move(out);
}

}  // namespace detail

// Magnus expansion of w under x_i -> 1 + X_i, truncated at degree cap,
// coefficients in Z/m (m = 0: over Z).
inline NcSeries expand(const GroupWord& w, const Integer& m, int degree_cap) {
  if (m < 0) fail(errc::invalid_modulus, "expand: modulus must be >= 0");
  if (degree_cap < 0)
    fail(errc::length_out_of_range, "expand: degree cap must be >= 0");
  NcSeries s;
  s.m = m;
  s.degree_cap = degree_cap;
  s.coeff[{}] = 1;
  for (const auto& [g, e] : w) {
    if (g < 1) fail(errc::index_out_of_range, "expand: generator index < 1");
    detail::append_letter(s, g, e);
  }
  return s;
}

// Coefficient of X_{i1}...X_{in} in the Magnus expansion of w mod m,
// full expansion route.
inline Integer magnus_coefficient(const GroupWord& w, const MultiIndex& I,
                                  const Integer& m) {
  NcSeries s = expand(w, m, static_cast<int>(I.size()));
  return s.at(I);
}

// Same coefficient by the Fox calculus recurrence: a single left-to-right
// pass keeping only the coefficients of the prefixes of I.  State mu[j]
// is the coefficient of X_{i1}..X_{ij} so far; a syllable x_g^e adds
// mu[j - k] * C(e, k) whenever the k entries I[j-k..j-1] all equal g.
inline Integer fox_coefficient(const GroupWord& w, const MultiIndex& I,
                               const Integer& m) {
  if (m < 0) fail(errc::invalid_modulus, "fox_coefficient: modulus must be >= 0");
  const int n = static_cast<int>(I.size());
  for (int idx : I)
    if (idx < 1) fail(errc::index_out_of_range, "fox_coefficient: index < 1");
  std::vector<Integer> mu(static_cast<size_t>(n) + 1, Integer(0));
  mu[0] = 1;
  for (const auto& [g, e] : w) {
    if (g < 1) fail(errc::index_out_of_range, "fox_coefficient: generator index < 1");
    std::vector<Integer> nxt = mu;
    for (int j = 1; j <= n; ++j) {
      Integer add = 0;
      for (int k = 1; k <= j; ++k) {
        if (I[static_cast<size_t>(j - k)] != g) break;
        add += mu[static_cast<size_t>(j - k)] * binomial_integer(e, k);
      }
      if (add != 0)
        nxt[static_cast<size_t>(j)] =
            detail::reduce_coeff(nxt[static_cast<size_t>(j)] + add, m);
    }
    mu = std::move(nxt);
  }
  return detail::reduce_coeff(mu[static_cast<size_t>(n)], m);
}

// All shuffles of I and J as a multiset (duplicates repeated).
inline std::vector<MultiIndex> shuffles(const MultiIndex& I,
                                        const MultiIndex& J) {
  if (I.empty()) return {J};
  if (J.empty()) return {I};
  std::vector<MultiIndex> out;
  MultiIndex It(I.begin() + 1, I.end());
  MultiIndex Jt(J.begin() + 1, J.end());
  for (auto& H : shuffles(It, J)) {
    H.insert(H.begin(), I.front());
    out.push_back(std::move(H));
  }
  for (auto& H : shuffles(I, Jt)) {
    H.insert(H.begin(), J.front());
    out.push_back(std::move(H));
  }
  if (I.front() == J.front()) {
    for (auto& H : shuffles(It, Jt)) {
      H.insert(H.begin(), I.front());
      out.push_back(std::move(H));
    }
  }
  return out;
}

// Proper shuffles: the coalescing terms are dropped, so every result has
// length |I| + |J|.
inline std::vector<MultiIndex> proper_shuffles(const MultiIndex& I,
                                               const MultiIndex& J) {
  if (I.empty()) return {J};
  if (J.empty()) return {I};
  std::vector<MultiIndex> out;
  MultiIndex It(I.begin() + 1, I.end());
  MultiIndex Jt(J.begin() + 1, J.end());
  for (auto& H : proper_shuffles(It, J)) {
    H.insert(H.begin(), I.front());
    out.push_back(std::move(H));
  }
  for (auto& H : proper_shuffles(I, Jt)) {
    H.insert(H.begin(), J.front());
    out.push_back(std::move(H));
  }
  return out;
}

// Smallest degree >= 1 with a nonzero term in the mod-m expansion of w,
// scanning degrees up to cap.  nullopt when every such term vanishes,
// i.e. w is trivial mod the cap (deeper than the cap or genuinely 1).
inline std::optional<int> zassenhaus_degree(const GroupWord& w,
                                            const Integer& m, int cap) {
  NcSeries s = expand(w, m, cap);
  std::optional<int> best;
  for (const auto& [I, c] : s.coeff) {
    if (I.empty() || c == 0) continue;
    int d = static_cast<int>(I.size());
    if (!best || d < *best) best = d;
  }
  return best;
}

// ---- word syntax ----------------------------------------------------------
//
// Grammar: sequence of items separated by optional whitespace.
//   item   := atom ['^' int]
//   atom   := 'x' uint | '[' seq ',' seq ']'
// Example: "x1 x2^-1 [x1,[x2,x3]]^2"

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline Integer parse_int_at(const std::string& s, size_t& i) {
  size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  size_t digits = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == digits) fail(errc::parse_error, "word: expected integer");
  return Integer(s.substr(start, i - start));
}

GroupWord parse_word_seq(const std::string& s, size_t& i, char stop);

inline GroupWord parse_word_item(const std::string& s, size_t& i) {
  GroupWord atom;
  if (s[i] == 'x' || s[i] == 'X') {
    ++i;
    size_t digits = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == digits) fail(errc::parse_error, "word: expected index after x");
    int g = std::stoi(s.substr(digits, i - digits));
    if (g < 1) fail(errc::index_out_of_range, "word: generator index < 1");
    atom.push_back(Letter{g, 1});
  } else if (s[i] == '[') {
    ++i;
    GroupWord u = parse_word_seq(s, i, ',');
    ++i;  // consume ','
    GroupWord v = parse_word_seq(s, i, ']');
    ++i;  // consume ']'
    atom = word_commutator(u, v);
  } else {
    fail(errc::parse_error, std::string("word: unexpected character '") +
                                s[i] + "'");
  }
  skip_ws(s, i);
  if (i < s.size() && s[i] == '^') {
    ++i;
    skip_ws(s, i);
    Integer e = parse_int_at(s, i);
    if (e == 0) fail(errc::parse_error, "word: exponent 0 not allowed");
    if (atom.size() == 1) {
      atom[0].exp *= e;
    } else {
      GroupWord base = e < 0 ? word_inverse(atom) : atom;
      Integer reps = e < 0 ? -e : e;
      // commutator powers only arise with small exponents in practice
      if (reps > 64)
        fail(errc::parse_error, "word: bracket exponent too large");
      GroupWord powed;
      for (Integer r = 0; r < reps; ++r)
        powed.insert(powed.end(), base.begin(), base.end());
      atom = std::move(powed);
    }
  }
  return atom;
}

inline GroupWord parse_word_seq(const std::string& s, size_t& i, char stop) {
  GroupWord out;
  skip_ws(s, i);
  while (i < s.size() && s[i] != stop) {
    GroupWord item = parse_word_item(s, i);
    out.insert(out.end(), item.begin(), item.end());
    skip_ws(s, i);
  }
  if (stop != '\0' && (i >= s.size() || s[i] != stop))
    fail(errc::parse_error, std::string("word: expected '") + stop + "'");
  return out;
}

}  // namespace detail

inline GroupWord parse_word(const std::string& s) {
  size_t i = 0;
  detail::skip_ws(s, i);
  if (i < s.size() && s[i] == '1') {
    size_t j = i + 1;
    detail::skip_ws(s, j);
    if (j >= s.size()) return {};  // "1" denotes the empty word
  }
  GroupWord w = detail::parse_word_seq(s, i, '\0');
  return w;
}

inline std::string word_to_string(const GroupWord& w) {
  std::string out;
  for (const auto& [g, e] : w) {
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(g);
    if (e != 1) out += "^" + e.str();
  }
  return out.empty() ? "1" : out;
}

}  // namespace msym
