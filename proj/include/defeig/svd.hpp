#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "defeig/complex_matrix.hpp"
#include "defeig/errors.hpp"

namespace defeig {

/// Thin SVD, M = U diag(sigma) V^H with U rows x p, V cols x p, p = min
/// dimension. Columns of U belonging to zero singular values are left zero.
struct SvdResult {
  ComplexMatrix U;
  std::vector<double> sigma;
  ComplexMatrix V;
};

namespace detail {

// One-sided Jacobi on a tall matrix (rows >= cols): right-multiplies plane
// rotations until all column pairs are orthogonal, then reads the singular
// values off as column norms. Slow but accurate to roughly eps * sigma_max,
// which is what the rank decisions in this library rely on.
inline SvdResult jacobi_svd_tall(const ComplexMatrix& m, bool want_u,
                                 bool want_v) {
  const int r = m.rows();
  const int c = m.cols();
  ComplexMatrix w = m;
  ComplexMatrix v = want_v ? ComplexMatrix::identity(c) : ComplexMatrix();

  constexpr double tol = 1e-15;
  constexpr int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < c - 1; ++p) {
      for (int q = p + 1; q < c; ++q) {
        double app = 0.0, aqq = 0.0;
        Complex apq = 0.0;
        for (int i = 0; i < r; ++i) {
          app += std::norm(w(i, p));
          aqq += std::norm(w(i, q));
          apq += std::conj(w(i, p)) * w(i, q);
        }
        double scale = std::sqrt(app * aqq);
        if (scale == 0.0 || std::abs(apq) <= tol * scale) continue;
        rotated = true;

        // Factor out the phase of apq, then apply the real Jacobi rotation
        // that annihilates the (p,q) inner product.
        double absapq = std::abs(apq);
        Complex phase = apq / absapq;
        double tau = (aqq - app) / (2.0 * absapq);
        double t = ((tau >= 0.0) ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double cs = 1.0 / std::sqrt(1.0 + t * t);
        double sn = t * cs;

        Complex cphase = std::conj(phase);
        for (int i = 0; i < r; ++i) {
          Complex wp = w(i, p);
          Complex wq = w(i, q);
          w(i, p) = cs * wp - sn * cphase * wq;
          w(i, q) = sn * phase * wp + cs * wq;
        }
        if (want_v) {
          for (int i = 0; i < c; ++i) {
            Complex vp = v(i, p);
            Complex vq = v(i, q);
            v(i, p) = cs * vp - sn * cphase * vq;
            v(i, q) = sn * phase * vp + cs * vq;
          }
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(c);
  for (int j = 0; j < c; ++j) sigma[j] = column_norm(w, j);

  // Sort singular values non-increasing, permuting columns along.
  std::vector<int> order(c);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sigma[a] > sigma[b]; });

  SvdResult out;
  out.sigma.resize(c);
  if (want_u) out.U = ComplexMatrix(r, c);
  if (want_v) out.V = ComplexMatrix(c, c);
  for (int j = 0; j < c; ++j) {
    int src = order[j];
    out.sigma[j] = sigma[src];
    if (want_u && sigma[src] > 0.0) {
      for (int i = 0; i < r; ++i) out.U(i, j) = w(i, src) / sigma[src];
    }
    if (want_v) {
      for (int i = 0; i < c; ++i) out.V(i, j) = v(i, src);
    }
  }
  return out;
}

}  // namespace detail

inline SvdResult svd(const ComplexMatrix& m, bool want_u = true,
                     bool want_v = true) {
  require(m.rows() >= 1 && m.cols() >= 1, Errc::invalid_argument,
          "svd of an empty matrix");
  if (m.rows() >= m.cols()) return detail::jacobi_svd_tall(m, want_u, want_v);
  // Wide case: factor the adjoint and swap the roles of U and V.
  SvdResult t = detail::jacobi_svd_tall(m.adjoint(), want_v, want_u);
  SvdResult out;
  out.sigma = std::move(t.sigma);
  out.U = std::move(t.V);
  out.V = std::move(t.U);
  return out;
}

/// Singular values only, non-increasing, length min(rows, cols).
inline std::vector<double> singular_values(const ComplexMatrix& m) {
  return svd(m, false, false).sigma;
}

inline double smallest_singular_value(const ComplexMatrix& m) {
  return singular_values(m).back();
}

/// Conventional rank cutoff: max(rows, cols) * eps * sigma_max.
inline double default_rank_tol(const ComplexMatrix& m, double sigma_max) {
  return std::max(m.rows(), m.cols()) * kEps * sigma_max;
}

/// Minimum-norm least-squares solution M^+ B through the SVD, dropping
/// singular values at or below rank_tol.
inline ComplexMatrix pseudo_inverse_solve(const SvdResult& f,
                                          const ComplexMatrix& b,
                                          double rank_tol) {
  ComplexMatrix y = f.U.adjoint() * b;
  for (int i = 0; i < y.rows(); ++i) {
    double s = f.sigma[i];
    Complex scale = (s > rank_tol) ? Complex(1.0 / s) : Complex(0.0);
    for (int j = 0; j < y.cols(); ++j) y(i, j) *= scale;
  }
  return f.V * y;
}

/// Spectral norm of the Moore-Penrose inverse: 1 / (smallest singular value
/// above the rank cutoff); +inf for the zero matrix.
inline double pinv_norm(const ComplexMatrix& m) {
  std::vector<double> s = singular_values(m);
  double tol = default_rank_tol(m, s.front());
  double smallest = 0.0;
  for (double v : s)
    if (v > tol) smallest = v;
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / smallest;
}

}  // namespace defeig
