#pragma once

#include <string>

#include "msym/arith.hpp"

namespace msym {

// A root of unity zeta_m^t, stored as (modulus, exponent) so that exact
// values survive serialization.  m = 2: +1/-1; m = 3: 1, zeta3, zeta3^2.
struct SymbolValue {
  Integer m = 1;
  Integer exponent = 0;

  bool operator==(const SymbolValue&) const = default;
};

inline SymbolValue make_symbol(const Integer& m, const Integer& t) {
  if (m < 1) fail(errc::invalid_modulus, "symbol: modulus must be >= 1");
  return SymbolValue{m, mod_floor(t, m)};
}

inline SymbolValue symbol_mul(const SymbolValue& a, const SymbolValue& b) {
  if (a.m != b.m) fail(errc::invalid_modulus, "symbol: moduli differ");
  return make_symbol(a.m, a.exponent + b.exponent);
}

inline SymbolValue symbol_inverse(const SymbolValue& a) {
  return make_symbol(a.m, -a.exponent);
}

inline std::string symbol_to_string(const SymbolValue& s) {
  if (s.exponent == 0) return s.m == 2 ? "+1" : "1";
  if (s.m == 2) return "-1";
  std::string base = s.m == 3 ? "zeta3" : "zeta" + s.m.str();
  if (s.exponent == 1) return base;
  return base + "^" + s.exponent.str();
}

}  // namespace msym
