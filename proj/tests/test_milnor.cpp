#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include <msym/milnor.hpp>

using namespace msym;

namespace {

LinkPresentation pres3() {
  LinkPresentation p;
  p.l = 3;
  p.m = 3;
  p.norms = {4, 7, 19};
  p.frobenius_words = {{}, {}, parse_word("[x2,x1]")};
  p.S = {1, 2, 3};
  return p;
}

LinkPresentation pres9() {
  LinkPresentation p;
  p.l = 3;
  p.m = 9;
  p.norms = {10, 10, 10};
  p.frobenius_words = {{}, {}, parse_word("[x2,x1]")};
  p.S = {1, 2, 3};
  return p;
}

UnipotentMatrix identity(int n) {
  UnipotentMatrix M(static_cast<size_t>(n),
                    std::vector<Integer>(static_cast<size_t>(n), Integer(0)));
  for (int i = 0; i < n; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  return M;
}

}  // namespace

TEST_CASE("validation accepts the reference shapes and rejects malformed data") {
  CHECK_NOTHROW(validate(pres3()));
  CHECK_NOTHROW(validate(pres9()));

  auto bad = pres3();
  bad.l = 4;
  CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("prime"), error);

  bad = pres3();
  bad.m = 6;
  CHECK_THROWS_AS(validate(bad), error);
  bad.m = 1;
  CHECK_THROWS_AS(validate(bad), error);

  bad = pres3();
  bad.norms = {4, 7};
  CHECK_THROWS_AS(validate(bad), error);

  bad = pres3();
  bad.norms[1] = 5;  // not 1 mod 3
  CHECK_THROWS_AS(validate(bad), error);
  bad.norms[1] = 1;
  CHECK_THROWS_AS(validate(bad), error);

  bad = pres3();
  bad.frobenius_words[2] = parse_word("x4");
  try {
    validate(bad);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::index_out_of_range);
  }

  bad = pres3();
  bad.S = {1, 4};
  CHECK_THROWS_AS(validate(bad), error);
}

TEST_CASE("relators have the peripheral shape") {
  auto p = pres3();
  GroupWord r1 = p.relator(1);
  CHECK(r1.front() == Letter{1, 3});
  // with an empty longitude the commutator collapses to x1 x1^-1
  CHECK(magnus_coefficient(r1, {1}, 0) == 3);
  CHECK(magnus_coefficient(r1, {1, 1}, 0) == 3);
  CHECK(magnus_coefficient(r1, {2}, 0) == 0);

  GroupWord r3 = p.relator(3);
  CHECK(r3.front() == Letter{3, 18});
  CHECK_THROWS_AS(p.relator(0), error);
  CHECK_THROWS_AS(p.relator(4), error);
}

TEST_CASE("norm-driven modulus of an index set") {
  LinkPresentation p;
  p.l = 3;
  p.m = 9;
  p.norms = {289, 2809};
  p.frobenius_words = {{}, {}};
  p.S = {1, 2};
  validate(p);
  CHECK(m_sub_I(p, {1}) == 9);    // 288 = 2^5 * 3^2
  CHECK(m_sub_I(p, {2}) == 27);   // 2808 = 2^3 * 3^3 * 13
  CHECK(m_sub_I(p, {1, 2}) == 9);

  CHECK_THROWS_AS(m_sub_I(p, {}), error);
  CHECK_THROWS_AS(m_sub_I(p, {3}), error);

  auto q = pres3();
  q.S = {1, 3};
  try {
    m_sub_I(q, {1, 2});
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::index_not_in_s);
  }
}

TEST_CASE("first invariants of the reference presentation") {
  auto p = pres3();
  CHECK(milnor_number(p, {1}) == 0);  // singleton convention
  CHECK(milnor_number(p, {1, 3}) == 0);
  CHECK(milnor_number(p, {1, 2, 3}) == 2);  // -1 mod 3
  CHECK(milnor_number(p, {2, 1, 3}) == 1);

  MilnorResult res = milnor_invariant(p, {1, 2, 3});
  CHECK(res.value == 2);
  CHECK(res.delta == 0);
  CHECK(res.reduced == 2);

  // length constraints: 2 <= |I| <= m_I
  CHECK_THROWS_AS(milnor_invariant(p, {1}), error);
  CHECK_THROWS_AS(milnor_invariant(p, {1, 2, 3, 3}), error);
}

TEST_CASE("cyclic proper subsequences") {
  auto v = cyclic_proper_subsequences({1, 2});
  CHECK(std::set<MultiIndex>(v.begin(), v.end()) ==
        std::set<MultiIndex>{{1}, {2}});

  v = cyclic_proper_subsequences({1, 1});
  CHECK(v == std::vector<MultiIndex>{{1}});

  v = cyclic_proper_subsequences({1, 2, 3});
  std::set<MultiIndex> got(v.begin(), v.end());
  CHECK(got.size() == 9);
  CHECK(got.count({2, 1}) == 1);
  CHECK(got.count({3, 1}) == 1);
  CHECK(got.count({1, 2, 3}) == 0);  // proper only
}

TEST_CASE("indeterminacy divisor") {
  auto p = pres3();
  CHECK(indeterminacy(p, {1, 2}) == 0);      // gcd hits m, zero ideal
  CHECK(indeterminacy(p, {1, 2, 3}) == 0);

  // a degree-one longitude makes a pair invariant a unit
  auto u = pres3();
  u.frobenius_words[1] = parse_word("x1");
  CHECK(indeterminacy(u, {1, 2, 3}) == 1);

  // l = 2: the binomial C(4,2) = 6 contributes 2 mod 4
  LinkPresentation q;
  q.l = 2;
  q.m = 4;
  q.norms = {5, 9, 13};
  q.frobenius_words = {{}, {}, parse_word("[x1,x2]")};
  q.S = {1, 2, 3};
  validate(q);
  CHECK(indeterminacy(q, {1, 2, 3}) == 2);
  MilnorResult res = milnor_invariant(q, {1, 2, 3});
  CHECK(res.value == 1);
  CHECK(res.delta == 2);
  CHECK(res.reduced == 1);
}

TEST_CASE("invariant is stable under conjugating the longitude") {
  auto base = milnor_invariant(pres3(), {1, 2, 3});
  for (const char* conj : {"x1", "x2^2", "x1 x2", "[x1,x2]"}) {
    auto p = pres3();
    GroupWord w = parse_word(conj);
    p.frobenius_words[2] =
        word_concat(word_concat(w, p.frobenius_words[2]), word_inverse(w));
    auto res = milnor_invariant(p, {1, 2, 3});
    CHECK(res.value == base.value);
    CHECK(res.delta == base.delta);
    CHECK(res.reduced == base.reduced);
  }
}

TEST_CASE("unipotent representation") {
  auto p = pres3();
  MultiIndex I{1, 2, 3};

  // relators act trivially
  for (int i = 1; i <= 3; ++i)
    CHECK(unipotent_rep(p, I, p.relator(i)) == identity(3));

  // the longitude's top-right entry is the reduced invariant
  UnipotentMatrix M = unipotent_rep(p, I, p.frobenius_words[2]);
  CHECK(M[0][2] == milnor_invariant(p, I).reduced);
  CHECK(M[0][1] == 0);
  CHECK(M[1][2] == 0);
  for (int a = 0; a < 3; ++a) CHECK(M[static_cast<size_t>(a)][static_cast<size_t>(a)] == 1);

  // multiplicative on products, mod m here since the ideal is zero
  GroupWord u = parse_word("x1 x2^-1 x3");
  GroupWord v = parse_word("[x1,x3] x2^2");
  CHECK(unipotent_rep(p, I, word_concat(u, v)) ==
        unipotent_mul(unipotent_rep(p, I, u), unipotent_rep(p, I, v), p.m));

  auto bad = pres3();
  bad.frobenius_words[1] = parse_word("x1");
  try {
    unipotent_rep(bad, I, u);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::unit_indeterminacy);
  }
}

TEST_CASE("well-definedness condition") {
  CHECK(check_condition_31(pres3(), {1, 2, 3}));
  CHECK(check_condition_31(pres9(), {1, 2, 3}));

  // C(9,3) = 84 = 3 mod 9 blocks length-4 indices at m = 9
  CHECK_FALSE(check_condition_31(pres9(), {1, 2, 3, 3}));

  // nonvanishing proper subsequence blocks too
  auto u = pres3();
  u.frobenius_words[1] = parse_word("x1");
  CHECK_FALSE(check_condition_31(u, {1, 2, 3}));
}

TEST_CASE("tuple symbol and its sign convention") {
  TupleSymbol t = tuple_symbol(pres3(), {1, 2, 3});
  CHECK(t.value == make_symbol(3, 2));
  CHECK(symbol_to_string(t.value) == "zeta3^2");
  CHECK(t.massey_exponent == 1);  // (-1)^3 * 2 mod 3

  LinkPresentation p;
  p.l = 3;
  p.m = 9;
  p.norms = {19, 19, 19};
  p.frobenius_words = {{}, {}, parse_word("[x1,x2]")};
  p.S = {1, 2, 3};
  validate(p);
  TupleSymbol t9 = tuple_symbol(p, {1, 2, 3});
  CHECK(t9.value == make_symbol(9, 1));
  CHECK(symbol_to_string(t9.value) == "zeta9");
  CHECK(t9.massey_exponent == 8);

  try {
    tuple_symbol(pres9(), {1, 2, 3, 3});
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::assumption_violated);
  }
}

TEST_CASE("shuffle relation") {
  auto p = pres9();
  CHECK(verify_shuffle_relation(p, {1}, {2}, 3));
  CHECK(verify_shuffle_relation(p, {1}, {1}, 3));
  CHECK(verify_shuffle_relation(p, {2}, {2}, 3));
  CHECK(verify_shuffle_relation(p, {1, 2}, {1}, 3));

  // m_I - 1 = 2 cannot accommodate |I| + |J| = 3
  try {
    verify_shuffle_relation(pres3(), {1, 1}, {2}, 3);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::hypothesis_violated);
  }
}

TEST_CASE("symbol value helpers") {
  CHECK(symbol_to_string(make_symbol(2, 0)) == "+1");
  CHECK(symbol_to_string(make_symbol(2, 1)) == "-1");
  CHECK(symbol_to_string(make_symbol(3, 0)) == "1");
  CHECK(symbol_to_string(make_symbol(3, 1)) == "zeta3");
  CHECK(symbol_to_string(make_symbol(3, 5)) == "zeta3^2");
  CHECK(symbol_mul(make_symbol(3, 2), make_symbol(3, 2)) == make_symbol(3, 1));
  CHECK(symbol_inverse(make_symbol(9, 4)) == make_symbol(9, 5));
  CHECK_THROWS_AS(symbol_mul(make_symbol(3, 1), make_symbol(9, 1)), error);
  CHECK_THROWS_AS(make_symbol(0, 1), error);
}
