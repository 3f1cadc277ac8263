#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "msym/cubic.hpp"
#include "msym/eisenstein.hpp"
#include "msym/magnus.hpp"
#include "msym/milnor.hpp"
#include "msym/symbol.hpp"

namespace msym {

using Json = nlohmann::ordered_json;

// Integers travel as decimal strings so arbitrary sizes survive JSON.
inline Json eisint_to_json(const EisInt& u) {
  return Json{{"a", u.a.str()}, {"b", u.b.str()}};
}

inline Integer json_to_integer(const Json& j, const char* what) {
  try {
    if (j.is_string()) return Integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(j.get<long long>());
  } catch (const std::exception&) {
  }
  fail(errc::parse_error, std::string(what) + ": expected integer");
}

inline EisInt json_to_eisint(const Json& j) {
  if (j.is_string()) return parse_eisint(j.get<std::string>());
  if (!j.is_object())
    fail(errc::parse_error, "eisenstein integer: expected {\"a\":..,\"b\":..}");
  EisInt u;
  u.a = json_to_integer(j.value("a", Json("0")), "a");
  u.b = json_to_integer(j.value("b", Json("0")), "b");
  return u;
}

inline Json symbol_to_json(const SymbolValue& s) {
  Json j;
  j["symbol"] = symbol_to_string(s);
  j["exponent"] = static_cast<long long>(s.exponent);
  j["m"] = static_cast<long long>(s.m);
  return j;
}

inline Json cubic_elem_to_json(const CubicRingElem& u) {
  Json j;
  j["x"] = eisint_to_json(u.x);
  j["y"] = eisint_to_json(u.y);
  j["z"] = eisint_to_json(u.z);
  return j;
}

inline Json certificate_to_json(const ThetaCertificate& cert) {
  Json j;
  j["pi1"] = eisint_to_json(cert.alpha.pi1.pi);
  j["pi2"] = eisint_to_json(cert.pi2.pi);
  j["alpha"] = cubic_elem_to_json(cert.alpha);
  j["e"] = cert.e;
  j["theta"] = cubic_elem_to_json(cert.theta);
  j["eta"] = cubic_elem_to_json(cert.eta);
  j["gamma"] = eisint_to_json(cert.beta_norm_witness);
  return j;
}

// {"l":3, "m":3, "norms":[...], "y":["[x1,x2]", ...], "S":[1,2,3]};
// S defaults to every generator.
inline LinkPresentation presentation_from_json(const Json& j) {
  if (!j.is_object())
    fail(errc::parse_error, "presentation: expected a JSON object");
  LinkPresentation pres;
  pres.l = json_to_integer(j.value("l", Json(3)), "l");
  pres.m = json_to_integer(j.value("m", Json(3)), "m");
  if (!j.contains("norms") || !j["norms"].is_array())
    fail(errc::parse_error, "presentation: missing norms array");
  for (const auto& n : j["norms"])
    pres.norms.push_back(json_to_integer(n, "norms[]"));
  if (!j.contains("y") || !j["y"].is_array())
    fail(errc::parse_error, "presentation: missing y array of words");
  for (const auto& w : j["y"]) {
    if (!w.is_string()) fail(errc::parse_error, "presentation: y entries are words");
    pres.frobenius_words.push_back(parse_word(w.get<std::string>()));
  }
  if (j.contains("S")) {
    for (const auto& s : j["S"])
      pres.S.push_back(static_cast<int>(json_to_integer(s, "S[]")));
  } else {
    for (int i = 1; i <= pres.r(); ++i) pres.S.push_back(i);
  }
  validate(pres);
  return pres;
}

inline Json presentation_to_json(const LinkPresentation& pres) {
  Json j;
  j["l"] = static_cast<long long>(pres.l);
  j["m"] = static_cast<long long>(pres.m);
  j["norms"] = Json::array();
  for (const Integer& n : pres.norms) j["norms"].push_back(n.str());
  j["y"] = Json::array();
  for (const GroupWord& w : pres.frobenius_words)
    j["y"].push_back(word_to_string(w));
  j["S"] = pres.S;
  return j;
}

// Index syntax: "123" (digit per entry) or "1,2,3" / "12,3" with commas.
inline MultiIndex parse_multiindex(const std::string& s) {
  MultiIndex I;
  if (s.find(',') != std::string::npos) {
    size_t i = 0;
    while (i < s.size()) {
      size_t j = s.find(',', i);
      if (j == std::string::npos) j = s.size();
      std::string part = s.substr(i, j - i);
      if (part.empty()) fail(errc::parse_error, "index: empty entry");
      for (char c : part)
        if (c < '0' || c > '9')
          fail(errc::parse_error, "index: expected digits");
      I.push_back(std::stoi(part));
      i = j + 1;
    }
  } else {
    for (char c : s) {
      if (c == ' ') continue;
      if (c < '1' || c > '9')
        fail(errc::parse_error, "index: expected digits 1-9 or comma form");
      I.push_back(c - '0');
    }
  }
  if (I.empty()) fail(errc::parse_error, "index: empty");
  return I;
}

inline std::string multiindex_to_string(const MultiIndex& I) {
  std::string out;
  bool wide = false;
  for (int i : I)
    if (i > 9) wide = true;
  for (size_t k = 0; k < I.size(); ++k) {
    if (wide && k) out += ',';
    out += std::to_string(I[k]);
  }
  return out;
}

inline Json error_to_json(const error& e) {
  Json j;
  j["error"] = Json{{"code", errc_name(e.code())}, {"message", e.what()}};
  return j;
}

}  // namespace msym
