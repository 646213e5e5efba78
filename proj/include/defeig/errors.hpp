#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace defeig {

// Failure categories surfaced by the library. The CLI maps these to the
// "kind" field of its JSON error object, so the names are part of the
// output format.
enum class Errc {
  dimension_mismatch,
  invalid_argument,
  io_error,
  parse_error,
  staircase_breakdown,
  rank_deficient_jacobian,
  rank_deficient_x,
  numerically_singular,
  no_convergence,
  unknown_fixture,
};

inline const char* errc_name(Errc k) {
  switch (k) {
    case Errc::dimension_mismatch: return "dimension";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::io_error: return "io";
    case Errc::parse_error: return "parse";
    case Errc::staircase_breakdown: return "staircase-breakdown";
    case Errc::rank_deficient_jacobian: return "rank-deficient-jacobian";
    case Errc::rank_deficient_x: return "rank-deficient-x";
    case Errc::numerically_singular: return "numerically-singular";
    case Errc::no_convergence: return "no-convergence";
    case Errc::unknown_fixture: return "unknown-fixture";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Errc kind() const { return kind_; }

 private:
  Errc kind_;
};

[[noreturn]] inline void raise(Errc kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool cond, Errc kind, const std::string& msg) {
  if (!cond) raise(kind, msg);
}

}  // namespace defeig
