#pragma once

#include <cmath>
#include <complex>

#include "defeig/complex_matrix.hpp"
#include "defeig/errors.hpp"

namespace defeig {

/// Thin QR factors: Q has orthonormal columns (rows x cols), R is square
/// upper-triangular (cols x cols) with non-negative real diagonal.
struct QrFactors {
  ComplexMatrix Q;
  ComplexMatrix R;
};

/// Householder thin QR of a tall (rows >= cols) complex matrix.
inline QrFactors thin_qr(const ComplexMatrix& m) {
  const int r = m.rows();
  const int c = m.cols();
  require(r >= c, Errc::dimension_mismatch,
          "thin_qr requires rows >= cols");

  ComplexMatrix work = m;
  // Householder vectors are stored column by column; v[j] has length r - j.
  std::vector<std::vector<Complex>> vs(c);
  std::vector<double> betas(c, 0.0);

  for (int j = 0; j < c; ++j) {
    double normx = 0.0;
    for (int i = j; i < r; ++i) normx += std::norm(work(i, j));
    normx = std::sqrt(normx);

    Complex x0 = work(j, j);
    Complex alpha;
    if (normx == 0.0) {
      alpha = 0.0;
    } else {
      Complex phase = (x0 == 0.0) ? Complex(1.0) : x0 / std::abs(x0);
      alpha = -phase * normx;
    }

    std::vector<Complex>& v = vs[j];
    v.resize(r - j);
    for (int i = j; i < r; ++i) v[i - j] = work(i, j);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (const Complex& t : v) vnorm2 += std::norm(t);
    double beta = (vnorm2 > 0.0) ? 2.0 / vnorm2 : 0.0;
    betas[j] = beta;

    // Apply I - beta v v^H to the trailing columns.
    if (beta > 0.0) {
      for (int col = j; col < c; ++col) {
        Complex dot = 0.0;
        for (int i = j; i < r; ++i) dot += std::conj(v[i - j]) * work(i, col);
        dot *= beta;
        for (int i = j; i < r; ++i) work(i, col) -= dot * v[i - j];
      }
    }
    work(j, j) = alpha;
    for (int i = j + 1; i < r; ++i) work(i, j) = 0.0;
  }

  ComplexMatrix R(c, c);
  for (int i = 0; i < c; ++i)
    for (int j = i; j < c; ++j) R(i, j) = work(i, j);

  // Q = H_0 H_1 ... H_{c-1} [I; 0], built by back accumulation.
  ComplexMatrix Q(r, c);
  for (int j = 0; j < c; ++j) Q(j, j) = 1.0;
  for (int j = c - 1; j >= 0; --j) {
    double beta = betas[j];
    if (beta == 0.0) continue;
    const std::vector<Complex>& v = vs[j];
    for (int col = 0; col < c; ++col) {
      Complex dot = 0.0;
      for (int i = j; i < r; ++i) dot += std::conj(v[i - j]) * Q(i, col);
      dot *= beta;
      for (int i = j; i < r; ++i) Q(i, col) -= dot * v[i - j];
    }
  }

  // Uniqueness convention: rotate phases so diag(R) is real non-negative.
  for (int j = 0; j < c; ++j) {
    Complex d = R(j, j);
    if (d == 0.0 || (d.imag() == 0.0 && d.real() >= 0.0)) continue;
    double mag = std::abs(d);
    Complex phase = d / mag;
    Complex conj_phase = std::conj(phase);
    for (int col = j + 1; col < c; ++col) R(j, col) *= conj_phase;
    R(j, j) = mag;
    for (int i = 0; i < r; ++i) Q(i, j) *= phase;
  }

  return {std::move(Q), std::move(R)};
}

/// Back substitution for R X = B with upper-triangular R. A diagonal entry of
/// magnitude below singular_tol raises numerically_singular.
inline ComplexMatrix solve_upper(const ComplexMatrix& R, const ComplexMatrix& B,
                                 double singular_tol = 0.0) {
  const int n = R.rows();
  require(R.cols() == n, Errc::dimension_mismatch, "R must be square");
  require(B.rows() == n, Errc::dimension_mismatch, "rhs row mismatch");
  ComplexMatrix X = B;
  for (int i = n - 1; i >= 0; --i) {
    Complex d = R(i, i);
    require(std::abs(d) > singular_tol, Errc::numerically_singular,
            "triangular solve met a negligible diagonal entry");
    for (int col = 0; col < B.cols(); ++col) {
      Complex s = X(i, col);
      for (int j = i + 1; j < n; ++j) s -= R(i, j) * X(j, col);
      X(i, col) = s / d;
    }
  }
  return X;
}

/// Forward substitution for R^H X = B (R upper-triangular, so R^H is lower).
inline ComplexMatrix solve_upper_adjoint(const ComplexMatrix& R,
                                         const ComplexMatrix& B,
                                         double singular_tol = 0.0) {
  const int n = R.rows();
  require(R.cols() == n, Errc::dimension_mismatch, "R must be square");
  require(B.rows() == n, Errc::dimension_mismatch, "rhs row mismatch");
  ComplexMatrix X = B;
  for (int i = 0; i < n; ++i) {
    Complex d = std::conj(R(i, i));
    require(std::abs(d) > singular_tol, Errc::numerically_singular,
            "triangular solve met a negligible diagonal entry");
    for (int col = 0; col < B.cols(); ++col) {
      Complex s = X(i, col);
      for (int j = 0; j < i; ++j) s -= std::conj(R(j, i)) * X(j, col);
      X(i, col) = s / d;
    }
  }
  return X;
}

}  // namespace defeig
