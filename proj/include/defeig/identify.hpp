#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "defeig/complex_matrix.hpp"
#include "defeig/solver.hpp"
#include "defeig/svd.hpp"

namespace defeig {

/// Numerical nullity of A - lambda0 I with tolerance theta: the count of
/// singular values below theta. For an eigenvalue estimate lambda0 whose
/// error is below theta while all other eigenvalues stay farther than theta
/// away, this is the geometric multiplicity.
inline int numerical_nullity(const ComplexMatrix& a, Complex lambda0,
                             double theta) {
  require(a.rows() == a.cols(), Errc::dimension_mismatch, "A must be square");
  require(theta > 0.0, Errc::invalid_argument, "theta must be positive");
  std::vector<double> s = singular_values(shifted(a, lambda0));
  int count = 0;
  for (double v : s)
    if (v < theta) ++count;
  return count;
}

inline double default_theta(const ComplexMatrix& a) {
  return 1e-2 * a.frobenius_norm() / a.rows();
}

enum class AnchorVerdict { underestimated, accepted, overestimated, failed };

inline const char* anchor_verdict_name(AnchorVerdict v) {
  switch (v) {
    case AnchorVerdict::underestimated: return "underestimated";
    case AnchorVerdict::accepted: return "accepted";
    case AnchorVerdict::overestimated: return "overestimated";
    case AnchorVerdict::failed: return "failed";
  }
  return "unknown";
}

struct AnchorRow {
  int k = 0;
  Complex lambda{};
  double condition = 0.0;
  double residual = 0.0;
  AnchorVerdict verdict = AnchorVerdict::failed;
  std::string note;  // failure detail when verdict == failed
};

struct AnchorDiagnostics {
  std::vector<AnchorRow> rows;  // ordered by increasing k
};

/// Detection thresholds for the anchor sweep. The underlying signals are
/// qualitative (huge Jacobian condition below the true anchor, a residual
/// jump of many orders above it), so all three knobs are configurable.
struct AnchorThresholds {
  double cond_threshold = 1e5;
  // resid_floor <= 0 selects the default 1e3 * eps * ||A||_F.
  double resid_floor = -1.0;
  double jump_factor = 1e6;
};

struct AnchorSearchResult {
  std::optional<int> k_accepted;
  AnchorDiagnostics diagnostics;
};

/// Sweeps the estimated Segre anchor k = 1..k_max at a fixed geometric
/// multiplicity m, classifying each solve. Accepts the largest k whose
/// Jacobian condition stays moderate and whose residual has not jumped.
/// Solver failures are recorded per row; the sweep itself never throws for
/// them. Returns no accepted k (with full diagnostics) when nothing
/// qualifies.
inline AnchorSearchResult anchor_search(const ComplexMatrix& a,
                                        Complex lambda0, int m, int k_max,
                                        const SolverConfig& cfg = {},
                                        AnchorThresholds th = {}) {
  require(m >= 1, Errc::invalid_argument, "m must be >= 1");
  require(k_max >= 1, Errc::invalid_argument, "k_max must be >= 1");
  if (th.resid_floor <= 0.0) th.resid_floor = 1e3 * kEps * a.frobenius_norm();

  AnchorSearchResult out;
  out.diagnostics.rows.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    AnchorRow row;
    row.k = k;
    try {
      PseudoEigSolution sol = pseudoeig(a, lambda0, m, k, cfg);
      row.lambda = sol.lambda_hat;
      row.condition = sol.condition;
      row.residual = sol.residual;
      row.verdict = AnchorVerdict::accepted;  // provisional; classified below
    } catch (const Error& e) {
      row.verdict = AnchorVerdict::failed;
      row.note = std::string(errc_name(e.kind())) + ": " + e.what();
      row.condition = std::numeric_limits<double>::infinity();
      row.residual = std::numeric_limits<double>::infinity();
    }
    out.diagnostics.rows.push_back(std::move(row));
  }

  // Classify. A row is underestimated when the Jacobian condition blows up
  // (the textbook signature pairs that with a residual at rounding level),
  // overestimated when its residual jumps by jump_factor over the best
  // residual seen at smaller k, and a candidate otherwise.
  double min_resid = std::numeric_limits<double>::infinity();
  std::vector<int> candidates;
  for (AnchorRow& row : out.diagnostics.rows) {
    if (row.verdict == AnchorVerdict::failed) continue;
    bool jumped = std::isfinite(min_resid) &&
                  row.residual > th.jump_factor * std::max(min_resid,
                                                           th.resid_floor / 1e3);
    if (!std::isfinite(row.condition) || row.condition > th.cond_threshold) {
      row.verdict = AnchorVerdict::underestimated;
    } else if (jumped) {
      row.verdict = AnchorVerdict::overestimated;
    } else {
      candidates.push_back(row.k);
    }
    min_resid = std::min(min_resid, row.residual);
  }
  if (!candidates.empty()) {
    out.k_accepted = candidates.back();
    for (AnchorRow& row : out.diagnostics.rows) {
      if (row.verdict == AnchorVerdict::failed ||
          row.verdict == AnchorVerdict::underestimated ||
          row.verdict == AnchorVerdict::overestimated) {
        continue;
      }
      row.verdict = (row.k == *out.k_accepted) ? AnchorVerdict::accepted
                                               : AnchorVerdict::underestimated;
    }
  } else {
    for (AnchorRow& row : out.diagnostics.rows) {
      if (row.verdict == AnchorVerdict::accepted)
        row.verdict = AnchorVerdict::underestimated;
    }
  }
  return out;
}

}  // namespace defeig
