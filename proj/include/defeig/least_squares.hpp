#pragma once

#include "defeig/complex_matrix.hpp"
#include "defeig/qr.hpp"
#include "defeig/svd.hpp"

namespace defeig {

/// Minimum-norm least-squares solution X of M X ~= B (Moore-Penrose M^+ B).
/// Full-column-rank tall systems go through Householder QR; rank-deficient or
/// wide systems fall back to the SVD pseudoinverse.
inline ComplexMatrix least_squares(const ComplexMatrix& m,
                                   const ComplexMatrix& b) {
  require(m.rows() == b.rows(), Errc::dimension_mismatch,
          "least_squares row mismatch");
  if (m.rows() >= m.cols()) {
    QrFactors qr = thin_qr(m);
    std::vector<double> s = singular_values(qr.R);
    double tol = default_rank_tol(m, s.front());
    if (s.back() > tol) {
      return solve_upper(qr.R, qr.Q.adjoint() * b);
    }
  }
  SvdResult f = svd(m);
  return pseudo_inverse_solve(f, b, default_rank_tol(m, f.sigma.front()));
}

}  // namespace defeig
