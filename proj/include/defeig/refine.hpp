#pragma once

#include <cmath>

#include "defeig/complex_matrix.hpp"
#include "defeig/errors.hpp"
#include "defeig/qr.hpp"
#include "defeig/solver.hpp"

namespace defeig {

/// Re-parameterized starting point produced by the orthonormalization
/// process: with (C', S') the solution component X becomes the orthonormal Q,
/// so minimizing the residual then directly minimizes the backward error.
struct OrthonormalizedStart {
  PencilParameters params;
  Complex lambda0;
  ComplexMatrix X0;       // orthonormal columns
  double r_condition;     // diag-ratio estimate of cond(R) from the thin QR
};

/// Transforms a converged solution (C, S, X) so that X has orthonormal
/// columns while g(A, lambda, X) stays (numerically) zero:
/// normalize column 1 and absorb the scale into row 1 of S, reset C's first
/// column to it, project the remaining columns, push the projection
/// coefficients into S, then thin-QR and similarity-transform S by R.
inline OrthonormalizedStart orthonormalize(const ComplexMatrix& a,
                                           const PseudoEigSolution& sol) {
  const int n = a.rows();
  const int k = sol.X_hat.cols();
  const int m = sol.params.C.cols();
  require(sol.X_hat.rows() == n, Errc::dimension_mismatch,
          "solution does not match the matrix");

  ComplexMatrix x = sol.X_hat;
  ComplexMatrix s = sol.params.S;
  ComplexMatrix c = sol.params.C;
  Complex lambda = sol.lambda_hat;

  // Scale column 1 to unit norm; the phase is fixed by making its
  // largest-magnitude entry real positive. Row 1 of S absorbs the scale so
  // the chain relation keeps holding.
  double nu = column_norm(x, 0);
  require(nu > 0.0, Errc::rank_deficient_x, "X has a zero first column");
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(x(i, 0)) > std::abs(x(imax, 0))) imax = i;
  Complex e = x(imax, 0);
  Complex z = nu * (e / std::abs(e));
  for (int i = 0; i < n; ++i) x(i, 0) /= z;
  for (int j = 1; j < k; ++j) s(0, j) *= z;

  // Reset the first parameter column to the (now unit) first chain vector.
  c.set_col(0, x.col(0));

  // Project columns 2..k against column 1 and push the coefficients into
  // row 1 of S. Both updates use the same pre-projection inner products.
  if (k > 1) {
    ComplexMatrix w(1, k - 1);
    for (int j = 1; j < k; ++j) {
      Complex dot = 0.0;
      for (int i = 0; i < n; ++i) dot += std::conj(x(i, 0)) * x(i, j);
      w(0, j - 1) = dot;
    }
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < n; ++i) x(i, j) -= x(i, 0) * w(0, j - 1);
    ComplexMatrix row_update = w * s.block(1, 0, k - 1, k);
    for (int j = 0; j < k; ++j) s(0, j) += row_update(0, j);
  }

  // Orthonormalize what is left and carry S along by similarity.
  QrFactors qr = thin_qr(x);
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    double d = std::abs(qr.R(i, i));
    rmax = std::max(rmax, d);
    rmin = std::min(rmin, d);
    require(d >= kEps * k, Errc::rank_deficient_x,
            "X is numerically rank-deficient; cannot orthonormalize");
  }

  // S <- R S R^{-1}, the R^{-1} applied through triangular solves on the
  // adjoint system rather than an explicit inverse.
  ComplexMatrix rs = qr.R * s;
  ComplexMatrix s_new = solve_upper_adjoint(qr.R, rs.adjoint()).adjoint();
  // The result is strictly upper-triangular in exact arithmetic; enforce
  // the shape so downstream validation sees exact zeros.
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) s_new(i, j) = 0.0;
  for (int i = 0; i + 1 < k; ++i) {
    require(s_new(i, i + 1) != 0.0, Errc::rank_deficient_x,
            "orthonormalization produced a degenerate nilpotent parameter");
  }

  OrthonormalizedStart out;
  out.params = PencilParameters{std::move(c), std::move(s_new), make_T(m, k)};
  out.lambda0 = lambda;
  out.X0 = std::move(qr.Q);
  out.r_condition = rmax / rmin;
  return out;
}

/// Orthonormalize, then run the Gauss-Newton loop again with the transformed
/// parameters. The refined solution has ||X^+||_2 ~ 1, so its backward error
/// is essentially the residual norm itself.
inline PseudoEigSolution refine(const ComplexMatrix& a,
                                const PseudoEigSolution& sol,
                                const SolverConfig& cfg = {}) {
  OrthonormalizedStart start = orthonormalize(a, sol);
  return run_gauss_newton(a, start.params, start.lambda0, start.X0, cfg);
}

}  // namespace defeig
