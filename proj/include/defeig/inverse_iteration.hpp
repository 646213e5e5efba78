#pragma once

#include <cmath>
#include <cstdint>

#include "defeig/complex_matrix.hpp"
#include "defeig/qr.hpp"
#include "defeig/random.hpp"

namespace defeig {

/// Estimates sigma_min of an upper-triangular R (equivalently of the matrix
/// it was factored from) by inverse power iteration on R^H R. The start
/// vector is seeded, so the estimate is deterministic. Raises
/// numerically_singular when a triangular solve meets a diagonal entry below
/// eps * ||R||_F; callers map that to an infinite condition number.
inline double smallest_sv_inverse_iteration(const ComplexMatrix& R, int steps,
                                            std::uint64_t seed = 0x5eedu) {
  const int n = R.rows();
  require(R.cols() == n, Errc::dimension_mismatch, "R must be square");
  require(steps >= 1, Errc::invalid_argument, "need at least one step");

  const double singular_tol = kEps * R.frobenius_norm();

  ComplexMatrix v = random_normal_matrix(n, 1, seed);
  double vn = v.frobenius_norm();
  v *= Complex(1.0 / vn);

  double growth = 1.0;
  for (int it = 0; it < steps; ++it) {
    ComplexMatrix w = solve_upper_adjoint(R, v, singular_tol);
    ComplexMatrix z = solve_upper(R, w, singular_tol);
    growth = z.frobenius_norm();
    require(std::isfinite(growth) && growth > 0.0, Errc::numerically_singular,
            "inverse iteration produced a non-finite iterate");
    v = z;
    v *= Complex(1.0 / growth);
  }
  // v was unit going into the last step and ||z|| ~ 1/sigma_min^2.
  return 1.0 / std::sqrt(growth);
}

}  // namespace defeig
