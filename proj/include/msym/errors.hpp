#pragma once

#include <stdexcept>
#include <string>

namespace msym {

enum class errc {
  invalid_modulus,
  non_residue,
  not_prime,
  not_admissible,
  not_nine_admissible,
  bound_exceeded,
  ramified,
  divides_argument,
  not_a_cube,
  index_out_of_range,
  index_not_in_s,
  length_out_of_range,
  unit_indeterminacy,
  hypothesis_violated,
  assumption_violated,
  context_mismatch,
  not_coprime_to_three,
  degenerate,
  theta_vanishes,
  distinctness_violated,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_modulus: return "InvalidModulus";
    case errc::non_residue: return "NonResidue";
    case errc::not_prime: return "NotPrime";
    case errc::not_admissible: return "NotAdmissible";
    case errc::not_nine_admissible: return "NotNineAdmissible";
    case errc::bound_exceeded: return "BoundExceeded";
    case errc::ramified: return "Ramified";
    case errc::divides_argument: return "DividesArgument";
    case errc::not_a_cube: return "NotACube";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::index_not_in_s: return "IndexNotInS";
    case errc::length_out_of_range: return "LengthOutOfRange";
    case errc::unit_indeterminacy: return "UnitIndeterminacy";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::assumption_violated: return "AssumptionViolated";
    case errc::context_mismatch: return "ContextMismatch";
    case errc::not_coprime_to_three: return "NotCoprimeToThree";
    case errc::degenerate: return "Degenerate";
    case errc::theta_vanishes: return "ThetaVanishes";
    case errc::distinctness_violated: return "DistinctnessViolated";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Library-wide exception; code() identifies the failed contract.
class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) {
  throw error(c, what);
}

}  // namespace msym
