#pragma once

#include <cmath>
#include <vector>

#include "defeig/complex_matrix.hpp"
#include "defeig/errors.hpp"

namespace defeig {

namespace detail {

// Householder similarity reduction to upper Hessenberg form, in place.
inline void hessenberg_reduce(ComplexMatrix& h) {
  const int n = h.rows();
  for (int j = 0; j < n - 2; ++j) {
    double normx = 0.0;
    for (int i = j + 1; i < n; ++i) normx += std::norm(h(i, j));
    normx = std::sqrt(normx);
    if (normx == 0.0) continue;

    Complex x0 = h(j + 1, j);
    Complex phase = (x0 == 0.0) ? Complex(1.0) : x0 / std::abs(x0);
    Complex alpha = -phase * normx;

    std::vector<Complex> v(n - j - 1);
    for (int i = j + 1; i < n; ++i) v[i - j - 1] = h(i, j);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (const Complex& t : v) vnorm2 += std::norm(t);
    if (vnorm2 == 0.0) continue;
    double beta = 2.0 / vnorm2;

    // H <- P H  with P = I - beta v v^H acting on rows j+1..n-1.
    for (int col = j; col < n; ++col) {
      Complex dot = 0.0;
      for (int i = j + 1; i < n; ++i)
        dot += std::conj(v[i - j - 1]) * h(i, col);
      dot *= beta;
      for (int i = j + 1; i < n; ++i) h(i, col) -= dot * v[i - j - 1];
    }
    // H <- H P acting on columns j+1..n-1.
    for (int row = 0; row < n; ++row) {
      Complex dot = 0.0;
      for (int i = j + 1; i < n; ++i) dot += h(row, i) * v[i - j - 1];
      dot *= beta;
      for (int i = j + 1; i < n; ++i)
        h(row, i) -= dot * std::conj(v[i - j - 1]);
    }
    h(j + 1, j) = alpha;
    for (int i = j + 2; i < n; ++i) h(i, j) = 0.0;
  }
}

// Eigenvalue of [[a, b], [c, d]] closest to d (Wilkinson's shift).
inline Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  Complex tr = a + d;
  Complex det = a * d - b * c;
  Complex disc = std::sqrt(tr * tr - 4.0 * det);
  Complex l1 = (tr + disc) / 2.0;
  Complex l2 = (tr - disc) / 2.0;
  return (std::abs(l1 - d) <= std::abs(l2 - d)) ? l1 : l2;
}

// Unitary plane rotation zeroing the second slot: G [a; b] = [r; 0].
struct Givens {
  Complex c1, s1;  // first row (c1, s1)
  Complex c2, s2;  // second row (c2, s2)
};

inline Givens make_givens(Complex a, Complex b) {
  double d = std::sqrt(std::norm(a) + std::norm(b));
  if (d == 0.0) return {1.0, 0.0, 0.0, 1.0};
  return {std::conj(a) / d, std::conj(b) / d, -b / d, a / d};
}

}  // namespace detail

/// Eigenvalues of a square complex matrix by explicit single-shift QR on the
/// Hessenberg form, Wilkinson shifts, standard deflation. Backward stable at
/// the desk scale this library targets (n <= 200); no eigenvectors.
inline std::vector<Complex> baseline_eigenvalues(const ComplexMatrix& m) {
  const int n = m.rows();
  require(n == m.cols(), Errc::dimension_mismatch,
          "eigenvalues need a square matrix");
  require(n >= 1, Errc::invalid_argument, "empty matrix");
  require(n <= 200, Errc::invalid_argument,
          "baseline eigensolver is limited to n <= 200");

  ComplexMatrix h = m;
  detail::hessenberg_reduce(h);

  std::vector<Complex> eig;
  eig.reserve(n);

  int hi = n - 1;
  int iter_total = 0;
  const int iter_budget = 30 * n;
  int stuck = 0;

  while (hi >= 0) {
    if (hi == 0) {
      eig.push_back(h(0, 0));
      break;
    }
    // Find the active block [lo, hi]: walk up while the subdiagonal is
    // non-negligible.
    int lo = hi;
    while (lo > 0) {
      double sub = std::abs(h(lo, lo - 1));
      if (sub <= kEps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)))) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }

    if (lo == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      stuck = 0;
      continue;
    }
    if (lo == hi - 1) {
      // Closed form for the trailing 2x2 block.
      Complex a = h(lo, lo), b = h(lo, hi), c = h(hi, lo), d = h(hi, hi);
      Complex tr = a + d;
      Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
      eig.push_back((tr + disc) / 2.0);
      eig.push_back((tr - disc) / 2.0);
      hi = lo - 1;
      stuck = 0;
      continue;
    }

    require(iter_total++ < iter_budget, Errc::no_convergence,
            "QR iteration exceeded its sweep budget");

    Complex mu = detail::wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi),
                                         h(hi, hi - 1), h(hi, hi));
    if (++stuck % 12 == 0) {
      // Exceptional shift to break the rare non-converging cycle.
      mu = h(hi, hi) +
           Complex(std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2)), 0.0);
    }

    // Explicit shifted QR sweep on the active block:
    // H - mu I = Q R, then H <- R Q + mu I.
    for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
    std::vector<detail::Givens> rots(hi - lo);
    for (int i = lo; i < hi; ++i) {
      detail::Givens g = detail::make_givens(h(i, i), h(i + 1, i));
      rots[i - lo] = g;
      for (int col = i; col <= hi; ++col) {
        Complex t1 = h(i, col), t2 = h(i + 1, col);
        h(i, col) = g.c1 * t1 + g.s1 * t2;
        h(i + 1, col) = g.c2 * t1 + g.s2 * t2;
      }
      h(i + 1, i) = 0.0;
    }
    for (int i = lo; i < hi; ++i) {
      const detail::Givens& g = rots[i - lo];
      // Right-multiply by G^H on columns i, i+1.
      for (int row = lo; row <= std::min(i + 1, hi); ++row) {
        Complex t1 = h(row, i), t2 = h(row, i + 1);
        h(row, i) = t1 * std::conj(g.c1) + t2 * std::conj(g.s1);
        h(row, i + 1) = t1 * std::conj(g.c2) + t2 * std::conj(g.s2);
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += mu;
  }

  return eig;
}

}  // namespace defeig
