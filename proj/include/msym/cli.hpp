#pragma once

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "msym/io_json.hpp"
#include "msym/msym.hpp"

namespace msym {

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

namespace cli_detail {

inline bool looks_rational(const std::string& s) {
  return s.find('w') == std::string::npos && s.find('*') == std::string::npos;
}

inline EisPrime parse_prime_strict(const std::string& s) {
  if (looks_rational(s)) return normalize_prime(Integer(s));
  return normalize_prime(parse_eisint(s));
}

inline EisPrime parse_prime_weak(const std::string& s) {
  if (looks_rational(s)) {
    Integer p(s);
    if (!is_prime(p)) fail(errc::not_prime, "p is not prime");
    if (p == 3) fail(errc::ramified, "3 is ramified");
    if (p % 3 == 2) return normalize_prime_weak(EisInt{p, 0});
    return normalize_prime_weak(detail::split_generator(p));
  }
  return normalize_prime_weak(parse_eisint(s));
}

inline EisInt parse_eis_arg(const std::string& s) {
  if (looks_rational(s)) return EisInt{Integer(s), 0};
  return parse_eisint(s);
}

inline long resolve_bound(long flag_value, long fallback) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("MS_DEFAULT_BOUND")) {
    try {
      long v = std::stol(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

inline LinkPresentation load_presentation(const std::string& file,
                                          const std::string& inline_json) {
  std::string text = inline_json;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) fail(errc::parse_error, "cannot open presentation file " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  if (text.empty())
    fail(errc::parse_error, "milnor: need --file or --pres presentation JSON");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::parse_error, std::string("presentation JSON: ") + e.what());
  }
  return presentation_from_json(j);
}

struct PaperCheck {
  std::string name;
  std::string expected;
  std::string got;
  bool pass = false;
};

inline std::vector<PaperCheck> paper_checks() {
  std::vector<PaperCheck> out;
  EisPrime p1 = normalize_prime(Integer(17));
  EisPrime p2 = normalize_prime(Integer(53));
  const long targets[5] = {71, 89, 107, 179, 197};
  const int expected[5] = {2, 1, 2, 1, 1};
  for (int i = 0; i < 5; ++i) {
    PaperCheck c;
    c.name = "triple-cubic-symbol(17,53," + std::to_string(targets[i]) + ")";
    c.expected = "zeta3^" + std::to_string(expected[i]);
    try {
      EisPrime p3 = normalize_prime(Integer(targets[i]));
      SymbolValue s = triple_cubic_symbol(p1, p2, p3);
      c.got = "zeta3^" + s.exponent.str();
      c.pass = s.exponent == expected[i];
    } catch (const error& e) {
      c.got = std::string("error ") + errc_name(e.code());
    }
    out.push_back(c);
  }
  {
    PaperCheck c;
    c.name = "magnus-coefficient((12); [x1,x2], m=3)";
    c.expected = "1";
    Integer v = magnus_coefficient(parse_word("[x1,x2]"), {1, 2}, 3);
    c.got = v.str();
    c.pass = v == 1;
    out.push_back(c);
  }
  {
    PaperCheck c;
    c.name = "magnus-coefficient((12); [x2,x1], m=3)";
    c.expected = "2";
    Integer v = magnus_coefficient(parse_word("[x2,x1]"), {1, 2}, 3);
    c.got = v.str();
    c.pass = v == 2;
    out.push_back(c);
  }
  return out;
}

inline int run_batch(const std::string& file, std::ostream& out,
                     std::ostream&) {
  std::ifstream in(file);
  if (!in) fail(errc::parse_error, "cannot open batch file " + file);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  auto work = [](const std::string& text) -> std::pair<int, std::string> {
    std::string trimmed = text;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
      trimmed.pop_back();
    if (trimmed.empty()) return {0, ""};
    Json rec;
    try {
      rec = Json::parse(trimmed);
    } catch (const std::exception& e) {
      Json j;
      j["error"] = Json{{"code", "ParseError"},
                        {"message", std::string("bad record: ") + e.what()}};
      return {1, j.dump()};
    }
    if (!rec.is_object() || !rec.contains("verb") || !rec["verb"].is_string()) {
      Json j;
      j["error"] = Json{{"code", "ParseError"},
                        {"message", "record needs a \"verb\" field"}};
      return {1, j.dump()};
    }
    std::vector<std::string> argv;
    argv.push_back(rec["verb"].get<std::string>());
    bool has_json = false;
    for (auto it = rec.begin(); it != rec.end(); ++it) {
      if (it.key() == "verb") continue;
      if (it.key() == "json") has_json = true;
      if (it.value().is_boolean()) {
        if (it.value().get<bool>()) argv.push_back("--" + it.key());
        continue;
      }
      argv.push_back("--" + it.key());
      if (it.value().is_string())
        argv.push_back(it.value().get<std::string>());
      else
        argv.push_back(it.value().dump());
    }
    if (!has_json) argv.push_back("--json");
    std::ostringstream o, e;
    int code = run(argv, o, e);
    std::string res = o.str();
    while (!res.empty() && (res.back() == '\n' || res.back() == '\r'))
      res.pop_back();
    if (code == 2 || res.empty()) {
      Json j;
      j["error"] = Json{{"code", code == 2 ? "Usage" : "Internal"},
                        {"message", e.str().empty() ? "command failed" : e.str()}};
      return {1, j.dump()};
    }
    return {code, res};
  };

  std::vector<std::pair<int, std::string>> results(lines.size());
  const size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (size_t base = 0; base < lines.size(); base += width) {
    size_t top = std::min(lines.size(), base + width);
    std::vector<std::future<std::pair<int, std::string>>> fut;
    for (size_t i = base; i < top; ++i)
      fut.push_back(std::async(std::launch::async, work, lines[i]));
    for (size_t i = base; i < top; ++i) results[i] = fut[i - base].get();
  }

  int rc = 0;
  for (const auto& [code, text] : results) {
    if (!text.empty()) out << text << "\n";
    if (code != 0) rc = 1;
  }
  return rc;
}

}  // namespace cli_detail

// Entry point shared by the binary and the tests.  Exit codes: 0 success,
// 1 domain error (structured object emitted), 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"multiple power residue symbols, Milnor invariants, and the "
               "quadratic/cubic symbol chains"};
  app.require_subcommand(1);

  // legendre
  auto* c_leg = app.add_subcommand("legendre", "Legendre symbol (a/p)");
  std::string leg_a, leg_p;
  bool leg_json = false;
  c_leg->add_option("--a", leg_a, "numerator")->required();
  c_leg->add_option("--p", leg_p, "odd prime modulus")->required();
  c_leg->add_flag("--json", leg_json, "JSON output");

  // redei
  auto* c_red = app.add_subcommand("redei", "Redei triple symbol [p1,p2,p3]");
  std::string red_p1, red_p2, red_p3;
  long red_bound = -1;
  bool red_json = false;
  c_red->add_option("--p1", red_p1)->required();
  c_red->add_option("--p2", red_p2)->required();
  c_red->add_option("--p3", red_p3)->required();
  c_red->add_option("--bound", red_bound, "ternary solver bound");
  c_red->add_flag("--json", red_json, "JSON output");

  // cubic-symbol
  auto* c_cub = app.add_subcommand(
      "cubic-symbol", "triple cubic residue symbol [p1,p2,p3] over Q(zeta3)");
  std::string cub_p1, cub_p2, cub_p3;
  long cub_bound = -1;
  bool cub_json = false, cub_cert = false;
  c_cub->add_option("--p1", cub_p1)->required();
  c_cub->add_option("--p2", cub_p2)->required();
  c_cub->add_option("--p3", cub_p3)->required();
  c_cub->add_option("--bound", cub_bound, "alpha search height bound");
  c_cub->add_flag("--json", cub_json, "JSON output");
  c_cub->add_flag("--emit-certificate", cub_cert,
                  "include the theta certificate in the output");

  // normalize
  auto* c_nrm = app.add_subcommand(
      "normalize", "canonical generator of a prime of Z[zeta3]");
  std::string nrm_p;
  bool nrm_json = false;
  c_nrm->add_option("--p", nrm_p, "rational prime or a+b*w generator")
      ->required();
  c_nrm->add_flag("--json", nrm_json, "JSON output");

  // character
  auto* c_chr = app.add_subcommand(
      "character", "cubic residue character exponent of x at a prime");
  std::string chr_x, chr_p;
  bool chr_json = false;
  c_chr->add_option("--x", chr_x, "element (integer or a+b*w)")->required();
  c_chr->add_option("--p", chr_p, "prime (rational or a+b*w)")->required();
  c_chr->add_flag("--json", chr_json, "JSON output");

  // magnus
  auto* c_mag = app.add_subcommand(
      "magnus", "Magnus expansion coefficients of group words");
  std::string mag_word, mag_index, mag_m = "3";
  long mag_degree = 6;
  bool mag_json = false, mag_fox = false, mag_zass = false;
  c_mag->add_option("--word", mag_word, "word, e.g. \"x1 x2^-1 [x1,x2]\"")
      ->required();
  c_mag->add_option("--index", mag_index, "multi-index, e.g. 12 or 1,2");
  c_mag->add_option("--m", mag_m, "coefficient modulus (0 = integers)");
  c_mag->add_option("--degree", mag_degree, "truncation degree cap");
  c_mag->add_flag("--fox", mag_fox, "use the Fox-derivative recursion");
  c_mag->add_flag("--zassenhaus", mag_zass,
                  "report the filtration degree instead of a coefficient");
  c_mag->add_flag("--json", mag_json, "JSON output");

  // milnor
  auto* c_mil = app.add_subcommand(
      "milnor", "Milnor invariants of a link-type presentation");
  std::string mil_file, mil_pres, mil_index;
  bool mil_json = false, mil_tuple = false;
  c_mil->add_option("--file", mil_file, "presentation JSON file");
  c_mil->add_option("--pres", mil_pres, "inline presentation JSON");
  c_mil->add_option("--index", mil_index, "multi-index")->required();
  c_mil->add_flag("--tuple", mil_tuple, "emit the n-tuple symbol");
  c_mil->add_flag("--json", mil_json, "JSON output");

  // verify-paper
  auto* c_ver = app.add_subcommand(
      "verify-paper",
      "run the built-in worked-example checks and report pass/fail");
  bool ver_json = false;
  c_ver->add_flag("--json", ver_json, "JSON output");

  // batch
  auto* c_bat = app.add_subcommand(
      "batch", "run JSON-lines command records from a file");
  std::string bat_file;
  c_bat->add_option("--file", bat_file, "JSON-lines input")->required();

  std::vector<const char*> argv;
  argv.push_back("msym");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage;
    int code = app.exit(e, out, usage);
    err << usage.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_leg)) {
      int v = legendre_symbol(Integer(leg_a), Integer(leg_p));
      if (leg_json) {
        Json j;
        j["value"] = v;
        out << j.dump() << "\n";
      } else {
        out << v << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_red)) {
      long bound = cli_detail::resolve_bound(red_bound, kDefaultTernaryBound);
      SymbolValue s =
          redei_symbol(Integer(red_p1), Integer(red_p2), Integer(red_p3), bound);
      if (red_json) {
        Json j = symbol_to_json(s);
        j["meta"] = Json{{"ternary_bound", bound}};
        out << j.dump() << "\n";
      } else {
        out << symbol_to_string(s) << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_cub)) {
      long bound = cli_detail::resolve_bound(cub_bound, kDefaultAlphaBound);
      EisPrime p1 = cli_detail::parse_prime_strict(cub_p1);
      EisPrime p2 = cli_detail::parse_prime_strict(cub_p2);
      EisPrime p3 = cli_detail::parse_prime_strict(cub_p3);
      SymbolValue s = triple_cubic_symbol(p1, p2, p3, bound);
      if (cub_json) {
        Json j = symbol_to_json(s);
        if (cub_cert) {
          ThetaCertificate cert = build_theta_certificate(p1, p2, bound);
          j["certificate"] = certificate_to_json(cert);
          j["meta"] = Json{{"alpha_bound", bound}};
        }
        out << j.dump() << "\n";
      } else {
        out << symbol_to_string(s) << "\n";
        if (cub_cert) {
          ThetaCertificate cert = build_theta_certificate(p1, p2, bound);
          out << "alpha = (" << to_string(cert.alpha.x) << ", "
              << to_string(cert.alpha.y) << ", " << to_string(cert.alpha.z)
              << "), e = " << cert.e << ", gamma = "
              << to_string(cert.beta_norm_witness) << "\n";
        }
      }
      return 0;
    }

    if (app.got_subcommand(c_nrm)) {
      EisPrime P = cli_detail::parse_prime_weak(nrm_p);
      if (nrm_json) {
        Json j;
        j["pi"] = eisint_to_json(P.pi);
        j["norm"] = P.q.str();
        j["rational_prime"] = P.p.str();
        j["kind"] = P.kind == PrimeKind::split ? "split" : "inert";
        j["nine_admissible"] = P.nine_admissible;
        out << j.dump() << "\n";
      } else {
        out << to_string(P.pi) << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_chr)) {
      EisPrime P = cli_detail::parse_prime_weak(chr_p);
      int t = cubic_character(cli_detail::parse_eis_arg(chr_x), P);
      if (chr_json) {
        Json j;
        j["exponent"] = t;
        j["m"] = 3;
        out << j.dump() << "\n";
      } else {
        out << t << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_mag)) {
      GroupWord w = parse_word(mag_word);
      Integer m(mag_m);
      if (mag_zass) {
        auto d = zassenhaus_degree(w, m, static_cast<int>(mag_degree));
        if (mag_json) {
          Json j;
          if (d)
            j["degree"] = *d;
          else
            j["degree"] = "AboveCap";
          j["meta"] = Json{{"degree_cap", mag_degree}};
          out << j.dump() << "\n";
        } else {
          out << (d ? std::to_string(*d) : std::string("AboveCap")) << "\n";
        }
        return 0;
      }
      if (mag_index.empty())
        fail(errc::parse_error, "magnus: --index required without --zassenhaus");
      MultiIndex I = parse_multiindex(mag_index);
      Integer v = mag_fox ? fox_coefficient(w, I, m)
                          : magnus_coefficient(w, I, m);
      if (mag_json) {
        Json j;
        j["coefficient"] = v.str();
        j["index"] = multiindex_to_string(I);
        j["m"] = mag_m;
        out << j.dump() << "\n";
      } else {
        out << v << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_mil)) {
      LinkPresentation pres =
          cli_detail::load_presentation(mil_file, mil_pres);
      MultiIndex I = parse_multiindex(mil_index);
      if (mil_tuple) {
        TupleSymbol ts = tuple_symbol(pres, I);
        if (mil_json) {
          Json j = symbol_to_json(ts.value);
          j["massey_exponent"] = ts.massey_exponent.str();
          out << j.dump() << "\n";
        } else {
          out << symbol_to_string(ts.value) << "\n";
        }
        return 0;
      }
      MilnorResult res = milnor_invariant(pres, I);
      if (mil_json) {
        Json j;
        j["I"] = multiindex_to_string(res.I);
        j["value"] = res.value.str();
        j["delta"] = res.delta.str();
        j["reduced"] = res.reduced.str();
        j["m"] = static_cast<long long>(pres.m);
        out << j.dump() << "\n";
      } else {
        out << "value " << res.value << ", delta " << res.delta
            << ", reduced " << res.reduced << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(c_ver)) {
      std::vector<cli_detail::PaperCheck> checks = cli_detail::paper_checks();
      int failed = 0;
      if (ver_json) {
        Json items = Json::array();
        for (const auto& c : checks) {
          items.push_back(Json{{"name", c.name},
                               {"expected", c.expected},
                               {"got", c.got},
                               {"pass", c.pass}});
          if (!c.pass) ++failed;
        }
        Json j;
        j["items"] = items;
        j["passed"] = static_cast<int>(checks.size()) - failed;
        j["failed"] = failed;
        out << j.dump() << "\n";
      } else {
        for (const auto& c : checks) {
          out << (c.pass ? "PASS" : "FAIL") << "  " << c.name
              << "  expected " << c.expected << ", got " << c.got << "\n";
          if (!c.pass) ++failed;
        }
      }
      return failed == 0 ? 0 : 1;
    }

    if (app.got_subcommand(c_bat)) {
      return cli_detail::run_batch(bat_file, out, err);
    }
  } catch (const error& e) {
    out << error_to_json(e).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json j;
    j["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
    out << j.dump() << "\n";
    return 1;
  }
  err << "no command given\n";
  return 2;
}

}  // namespace msym
