#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <msym/eisenstein.hpp>

using namespace msym;

namespace {

EisInt rand_eis(unsigned& state) {
  auto next = [&state] {
    state = state * 1664525u + 1013904223u;
    return static_cast<long>(state >> 20) % 19 - 9;
  };
  return EisInt{Integer(next()), Integer(next())};
}

}  // namespace

TEST_CASE("ring arithmetic against the defining relation z3^2 = -1 - z3") {
  EisInt z3{0, 1};
  CHECK(z3 * z3 == EisInt(-1, -1));
  CHECK(z3 * z3 * z3 == EisInt(1, 0));
  EisInt u{5, 2};
  CHECK(u * EisInt(1, 0) == u);
  CHECK(eis_norm(u) == 19);
  CHECK(eis_norm(z3) == 1);
}

TEST_CASE("norm is multiplicative and matches conjugate product") {
  unsigned st = 12345;
  for (int i = 0; i < 50; ++i) {
    EisInt u = rand_eis(st), v = rand_eis(st);
    CHECK(eis_norm(u * v) == eis_norm(u) * eis_norm(v));
    EisInt c = eis_conj(u);
    CHECK(u * c == EisInt{eis_norm(u), 0});
  }
}

TEST_CASE("six units, all of norm one") {
  const auto& us = eis_units();
  CHECK(us.size() == 6);
  for (const auto& u : us) CHECK(eis_norm(u) == 1);
  for (size_t i = 0; i < us.size(); ++i)
    for (size_t j = i + 1; j < us.size(); ++j) CHECK_FALSE(us[i] == us[j]);
}

TEST_CASE("exact division") {
  EisInt u{5, 2}, v{3, 1};
  EisInt w = u * v;
  auto q = eis_divide_exact(w, v);
  REQUIRE(q.has_value());
  CHECK(*q == u);
  CHECK_FALSE(eis_divide_exact(EisInt{1, 0}, EisInt{2, 0}).has_value());
}

TEST_CASE("canonical residues modulo (3 sqrt(-3))") {
  // lattice basis (3,6), (0,9): both reduce to zero
  CHECK(eis_canon27(EisInt{3, 6}) == std::pair<Integer, Integer>{0, 0});
  CHECK(eis_canon27(EisInt{0, 9}) == std::pair<Integer, Integer>{0, 0});
  CHECK(eis_canon27(EisInt{1, 0}) == std::pair<Integer, Integer>{1, 0});
  CHECK(eis_canon27(EisInt{-17, 0}) == std::pair<Integer, Integer>{1, 0});
  CHECK(eis_is_one_mod_3sqrtm3(EisInt{-17, 0}));
  CHECK_FALSE(eis_is_one_mod_3sqrtm3(EisInt{17, 0}));
  // exactly 27 residue classes
  int distinct = 0;
  bool seen[3][9] = {};
  for (long a = -20; a < 20; ++a)
    for (long b = -20; b < 20; ++b) {
      auto [r, s] = eis_canon27(EisInt{Integer(a), Integer(b)});
      int ri = static_cast<int>(r), si = static_cast<int>(s);
      REQUIRE(ri >= 0);
      REQUIRE(ri < 3);
      REQUIRE(si >= 0);
      REQUIRE(si < 9);
      if (!seen[ri][si]) {
        seen[ri][si] = true;
        ++distinct;
      }
    }
  CHECK(distinct == 27);
}

TEST_CASE("normalization pins the reference generators") {
  EisPrime p17 = normalize_prime(Integer(17));
  CHECK(p17.pi == EisInt{-17, 0});
  CHECK(p17.kind == PrimeKind::inert);
  CHECK(p17.q == 289);
  CHECK(p17.nine_admissible);

  EisPrime p53 = normalize_prime(Integer(53));
  CHECK(p53.pi == EisInt{-53, 0});

  EisPrime p71 = normalize_prime(Integer(71));
  CHECK(p71.pi == EisInt{-71, 0});

  // split prime 19 = N(5 + 2 z3); normalized generator is z3*(5+2z3)
  EisPrime p19 = normalize_prime(EisInt{5, 2});
  CHECK(p19.pi == EisInt{-2, 3});
  CHECK(p19.kind == PrimeKind::split);
  CHECK(p19.q == 19);
  CHECK(eis_is_one_mod_3sqrtm3(p19.pi));
  CHECK(normalize_prime(Integer(19)).pi == EisInt{-2, 3});
}

TEST_CASE("normalization uniqueness among the six associates") {
  for (long p : {17, 53, 71, 89, 107, 179, 197}) {
    EisPrime P = normalize_prime(Integer(p));
    int hits = 0;
    for (const auto& u : eis_units())
      if (eis_is_one_mod_3sqrtm3(u * EisInt{Integer(p), 0})) ++hits;
    CHECK(hits == 1);
    CHECK(eis_is_one_mod_3sqrtm3(P.pi));
  }
  // split norms = 1 mod 9 below 3000
  for (long p = 7; p < 3000; ++p) {
    if (!is_prime(Integer(p)) || p % 9 != 1) continue;
    EisPrime P = normalize_prime(Integer(p));
    CHECK(eis_norm(P.pi) == p);
    CHECK(eis_is_one_mod_3sqrtm3(P.pi));
  }
}

TEST_CASE("normalization rejections") {
  CHECK_THROWS_AS(normalize_prime(Integer(3)), error);   // ramified
  CHECK_THROWS_AS(normalize_prime(Integer(12)), error);  // composite
  CHECK_THROWS_AS(normalize_prime(Integer(7)), error);   // norm 7 mod 9
  CHECK_THROWS_AS(normalize_prime(EisInt{2, 0}), error); // norm 4 mod 9
  try {
    normalize_prime(Integer(7));
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::not_nine_admissible);
  }
}

TEST_CASE("auxiliary prime is the smallest weakly-normalized helper") {
  EisPrime aux = auxiliary_prime();
  CHECK(aux.pi == EisInt{3, 1});
  CHECK(aux.q == 7);
  CHECK_FALSE(aux.nine_admissible);
  // the strict congruence is impossible for norms != 1 mod 9
  CHECK_FALSE(eis_is_one_mod_3sqrtm3(aux.pi));
}

TEST_CASE("obstruction-vanishing detector") {
  std::vector<EisPrime> S = {normalize_prime(Integer(17)),
                             normalize_prime(Integer(53))};
  CHECK_FALSE(b_s_vanishes(S));
  S.push_back(auxiliary_prime());
  CHECK(b_s_vanishes(S));
}

TEST_CASE("residue field of the norm-7 auxiliary prime") {
  EisPrime aux = auxiliary_prime();
  ResidueField F = residue_field_of(aux);
  CHECK(F.q == 7);
  CHECK(F.omega == RFElem{4, 0});
  // omega must satisfy T^2 + T + 1 = 0
  CHECK(mod_floor(F.omega.c * F.omega.c + F.omega.c + 1, F.p) == 0);
  CHECK(cubic_character(EisInt{2, 0}, aux) == 1);
  CHECK(cubic_character(EisInt{1, 0}, aux) == 0);
  CHECK_THROWS_AS(cubic_character(EisInt{7, 0}, aux), error);
}

TEST_CASE("inert residue field and rational elements as cubes") {
  EisPrime p71 = normalize_prime(Integer(71));
  ResidueField F = residue_field_of(p71);
  CHECK(F.q == 71 * 71);
  // every rational integer is a cube in an inert residue field
  for (long a = 1; a < 30; ++a)
    CHECK(cubic_character_in(F, reduce(EisInt{Integer(a), 0}, F)) == 0);
  // z3 too: 9 divides q+1, so (q^2-1)/3 is a multiple of 3
  CHECK(cubic_character_in(F, F.omega) == 0);
  // but the character is not identically trivial
  bool saw_noncube = false;
  for (long a = 0; a < 6 && !saw_noncube; ++a)
    for (long b = 1; b < 6 && !saw_noncube; ++b)
      if (cubic_character_in(F, reduce(EisInt{Integer(a), Integer(b)}, F)) != 0)
        saw_noncube = true;
  CHECK(saw_noncube);
}

TEST_CASE("cube roots across the three field branches") {
  // q = 4 mod 9: F_13
  {
    EisPrime P = normalize_prime_weak(detail::split_generator(13));
    ResidueField F = residue_field_of(P);
    RFElem r = cube_root_in_field(RFElem{8, 0}, F);
    CHECK(F.mul(r, F.mul(r, r)) == RFElem{8, 0});
    CHECK(r == RFElem{2, 0});  // minimal of the three roots
  }
  // q = 7 mod 9: F_7
  {
    EisPrime aux = auxiliary_prime();
    ResidueField F = residue_field_of(aux);
    RFElem r = cube_root_in_field(RFElem{6, 0}, F);
    CHECK(F.mul(r, F.mul(r, r)) == RFElem{6, 0});
  }
  // q = 1 mod 9 split: F_19 via the Adleman-Manders-Miller branch
  {
    EisPrime P = normalize_prime(Integer(19));
    ResidueField F = residue_field_of(P);
    for (long a = 1; a < 19; ++a) {
      RFElem x{Integer(a), 0};
      if (cubic_character_in(F, x) != 0) {
        CHECK_THROWS_AS(cube_root_in_field(x, F), error);
        continue;
      }
      RFElem r = cube_root_in_field(x, F);
      CHECK(F.mul(r, F.mul(r, r)) == x);
    }
  }
  // q = 1 mod 9 inert: F_289
  {
    EisPrime P = normalize_prime(Integer(17));
    ResidueField F = residue_field_of(P);
    RFElem x = reduce(EisInt{2, 3}, F);
    RFElem cube = F.mul(x, F.mul(x, x));
    RFElem r = cube_root_in_field(cube, F);
    CHECK(F.mul(r, F.mul(r, r)) == cube);
    auto roots = cube_roots_in_field(cube, F);
    for (const auto& rt : roots) CHECK(F.mul(rt, F.mul(rt, rt)) == cube);
    // returned canonical root is the least of the three
    for (const auto& rt : roots) CHECK_FALSE(detail::rf_less(rt, r));
  }
}

TEST_CASE("canonical root is reproducible") {
  EisPrime P = normalize_prime(Integer(19));
  ResidueField F = residue_field_of(P);
  RFElem a{7, 0};
  if (cubic_character_in(F, a) == 0) {
    CHECK(cube_root_in_field(a, F) == cube_root_in_field(a, F));
  }
  auto roots = cube_roots_in_field(RFElem{8, 0}, F);
  CHECK((roots[0] != roots[1] && roots[1] != roots[2] && roots[0] != roots[2]));
}

TEST_CASE("text round trips") {
  CHECK(to_string(EisInt{-17, 0}) == "-17");
  CHECK(parse_eisint("-17") == EisInt{-17, 0});
  CHECK(parse_eisint(to_string(EisInt{-2, 3})) == EisInt{-2, 3});
  CHECK(parse_eisint("3+1*w") == EisInt{3, 1});
  CHECK(parse_eisint("w") == EisInt{0, 1});
  CHECK(parse_eisint("-w") == EisInt{0, -1});
  CHECK(parse_eisint(" 5 + 2*w ") == EisInt{5, 2});
  CHECK_THROWS_AS(parse_eisint("abc"), error);
  CHECK_THROWS_AS(parse_eisint(""), error);
}
