#pragma once

#include <string>

#include <json.hpp>

#include "defeig/complex_matrix.hpp"
#include "defeig/identify.hpp"
#include "defeig/solver.hpp"

// JSON views of solver results. Schema (stable, consumed by the CLI tests):
//   input:       dimensions, file digest, lambda0, m, k, seed, theta
//   solution:    lambda_hat, residual, backward_error, condition,
//                iterations, converged, X, S
//   certificate: perturbation_norm, chain_residual, kernel_staircase,
//                jordan_block_verified  (optional)
//   diagnostics: nullity and the anchor table                (optional)
//   error:       kind + message                              (errors only)
// Complex scalars serialize as {"re": .., "im": ..}; matrices as row-major
// nested arrays of the same objects. Numbers round-trip exactly.

namespace defeig {

using json = nlohmann::json;

inline json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Infinity is not representable in JSON; an infinite condition estimate is
// reported as null.
inline json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

inline json to_json(const PseudoEigSolution& sol) {
  json j{{"lambda_hat", to_json(sol.lambda_hat)},
         {"residual", sol.residual},
         {"backward_error", sol.backward_error},
         {"condition", finite_or_null(sol.condition)},
         {"iterations", sol.iterations},
         {"converged", sol.converged},
         {"X", to_json(sol.X_hat)},
         {"S", to_json(sol.params.S)}};
  if (!sol.diagnostic.empty()) j["note"] = sol.diagnostic;
  return j;
}

inline json to_json(const BackwardCertificate& cert) {
  return {{"perturbation_norm", cert.perturbation_norm},
          {"chain_residual", cert.chain_residual},
          {"chain_verified", cert.chain_verified},
          {"kernel_staircase", cert.kernel_staircase},
          {"jordan_block_verified", cert.jordan_block_verified}};
}

inline json to_json(const AnchorDiagnostics& diag) {
  json rows = json::array();
  for (const AnchorRow& r : diag.rows) {
    json row{{"k", r.k},
             {"condition", finite_or_null(r.condition)},
             {"residual", finite_or_null(r.residual)},
             {"verdict", anchor_verdict_name(r.verdict)}};
    if (r.verdict != AnchorVerdict::failed) row["lambda"] = to_json(r.lambda);
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace defeig
