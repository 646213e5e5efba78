#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "defeig/complex_matrix.hpp"
#include "defeig/errors.hpp"
#include "defeig/random.hpp"

namespace defeig {

/// Multiplicity support of an eigenvalue: geometric multiplicity m and the
/// size k of the smallest Jordan block (the Segre anchor).
struct MultiplicitySupport {
  int m = 1;
  int k = 1;
};

inline void validate_support(const MultiplicitySupport& ms, int n) {
  require(ms.m >= 1 && ms.m <= n, Errc::invalid_argument,
          "geometric multiplicity m must satisfy 1 <= m <= n");
  require(ms.k >= 1 && ms.k <= n, Errc::invalid_argument,
          "Segre anchor k must satisfy 1 <= k <= n");
}

/// Parameters (C, S, T) of the regularizing map
///   g(A, lambda, X) = ( (A - lambda I) X - X S,  C^H X - T ).
/// S is strictly upper-triangular and nilpotent of rank k-1 (nonzero
/// superdiagonal product); T is the m x k matrix with a single 1 in the
/// (1,1) slot.
struct PencilParameters {
  ComplexMatrix C;  // n x m
  ComplexMatrix S;  // k x k
  ComplexMatrix T;  // m x k
};

/// The m x k matrix with entry (1,1) = 1 and zeros elsewhere.
inline ComplexMatrix make_T(int m, int k) {
  require(m >= 1 && k >= 1, Errc::invalid_argument, "make_T needs m, k >= 1");
  ComplexMatrix t(m, k);
  t(0, 0) = 1.0;
  return t;
}

/// Random n x m parameter matrix: i.i.d. complex normal entries, columns
/// scaled to unit 2-norm so the two residual blocks of g live on comparable
/// scales. Deterministic for a given seed.
inline ComplexMatrix random_C(int n, int m, std::uint64_t seed) {
  require(n >= m && m >= 1, Errc::invalid_argument,
          "random_C needs n >= m >= 1");
  ComplexMatrix c = random_normal_matrix(n, m, seed);
  for (int j = 0; j < m; ++j) {
    double nj = column_norm(c, j);
    if (nj == 0.0) continue;  // measure-zero; leave the column as is
    for (int i = 0; i < n; ++i) c(i, j) /= nj;
  }
  return c;
}

inline void validate_pencil(const PencilParameters& p, int n) {
  const int m = p.C.cols();
  const int k = p.S.rows();
  require(p.C.rows() == n, Errc::dimension_mismatch, "C must have n rows");
  require(p.S.cols() == k, Errc::dimension_mismatch, "S must be square");
  require(p.T.rows() == m && p.T.cols() == k, Errc::dimension_mismatch,
          "T must be m x k");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j)
      require(p.S(i, j) == 0.0, Errc::invalid_argument,
              "S must be strictly upper-triangular");
  for (int i = 0; i + 1 < k; ++i)
    require(p.S(i, i + 1) != 0.0, Errc::invalid_argument,
            "S must have a nonzero superdiagonal");
  require(p.T == make_T(m, k), Errc::invalid_argument,
          "T must be the unit (1,1) matrix");
}

/// Value of g: first block (A - lambda I) X - X S is n x k, second block
/// C^H X - T is m x k.
struct MappingValue {
  ComplexMatrix r1;
  ComplexMatrix r2;
};

inline MappingValue eval_g(const ComplexMatrix& a, const PencilParameters& p,
                           Complex lambda, const ComplexMatrix& x) {
  const int n = a.rows();
  const int k = p.S.rows();
  const int m = p.C.cols();
  require(a.cols() == n, Errc::dimension_mismatch, "A must be square");
  require(x.rows() == n && x.cols() == k, Errc::dimension_mismatch,
          "X must be n x k");

  // The residual is the one quantity whose rounding floor limits the whole
  // solver, so each entry is accumulated in extended precision before being
  // rounded back to double. On matrices with entries spanning several
  // orders of magnitude this buys the stopping rule and the reported
  // residual about three digits.
  using Wide = std::complex<long double>;
  auto wide = [](Complex z) { return Wide(z.real(), z.imag()); };
  const Wide lam = wide(lambda);

  MappingValue v{ComplexMatrix(n, k), ComplexMatrix(m, k)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      Wide acc(0.0L, 0.0L);
      for (int l = 0; l < n; ++l) acc += wide(a(i, l)) * wide(x(l, j));
      acc -= lam * wide(x(i, j));
      // S is strictly upper-triangular: only l < j contributes.
      for (int l = 0; l < j; ++l) acc -= wide(x(i, l)) * wide(p.S(l, j));
      v.r1(i, j) = Complex(static_cast<double>(acc.real()),
                           static_cast<double>(acc.imag()));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      Wide acc = -wide(p.T(i, j));
      for (int l = 0; l < n; ++l)
        acc += std::conj(wide(p.C(l, i))) * wide(x(l, j));
      v.r2(i, j) = Complex(static_cast<double>(acc.real()),
                           static_cast<double>(acc.imag()));
    }
  }
  return v;
}

/// 2-norm of the stacked residual: square root of the sum of squares of all
/// entries of both blocks.
inline double residual_norm(const MappingValue& v) {
  double s1 = v.r1.frobenius_norm();
  double s2 = v.r2.frobenius_norm();
  return std::hypot(s1, s2);
}

inline double residual_norm(const ComplexMatrix& a, const PencilParameters& p,
                            Complex lambda, const ComplexMatrix& x) {
  return residual_norm(eval_g(a, p, lambda, x));
}

// ---------------------------------------------------------------------------
// Basis ordering.
//
// The Jacobian of g with respect to (lambda, X) is a linear map; its matrix
// depends on how the domain and codomain are flattened. This library fixes
// the blockwise upper-triangular arrangement: unknowns ordered
// (x_k, x_{k-1}, ..., x_1, lambda) and equations grouped per column index
// j = k down to 1, within each group the C^H rows first, then the
// (A - lambda I) rows. pack/unpack and assemble_jacobian all follow this
// one convention.
// ---------------------------------------------------------------------------

/// Flatten a domain direction (sigma, Y) into an (nk+1) x 1 column.
inline ComplexMatrix pack(Complex sigma, const ComplexMatrix& y) {
  const int n = y.rows();
  const int k = y.cols();
  ComplexMatrix u(n * k + 1, 1);
  int at = 0;
  for (int j = k - 1; j >= 0; --j)
    for (int i = 0; i < n; ++i) u(at++, 0) = y(i, j);
  u(at, 0) = sigma;
  return u;
}

/// Inverse of pack for an n x k shape.
inline std::pair<Complex, ComplexMatrix> unpack(const ComplexMatrix& u, int n,
                                                int k) {
  require(u.cols() == 1 && u.rows() == n * k + 1, Errc::dimension_mismatch,
          "packed vector has the wrong length");
  ComplexMatrix y(n, k);
  int at = 0;
  for (int j = k - 1; j >= 0; --j)
    for (int i = 0; i < n; ++i) y(i, j) = u(at++, 0);
  return {u(at, 0), std::move(y)};
}

/// Flatten a codomain value (R1, R2) into an (nk+mk) x 1 column, matching the
/// row order of assemble_jacobian.
inline ComplexMatrix pack_image(const MappingValue& v) {
  const int n = v.r1.rows();
  const int k = v.r1.cols();
  const int m = v.r2.rows();
  ComplexMatrix b((n + m) * k, 1);
  int at = 0;
  for (int j = k - 1; j >= 0; --j) {
    for (int i = 0; i < m; ++i) b(at++, 0) = v.r2(i, j);
    for (int i = 0; i < n; ++i) b(at++, 0) = v.r1(i, j);
  }
  return b;
}

/// Matrix of the partial Jacobian of g with respect to (lambda, X) at
/// (A, lambda, X): the linear map
///   (sigma, Y) -> ( -sigma X + (A - lambda I) Y - Y S,  C^H Y )
/// in the fixed basis ordering. Shape (nk + mk) x (nk + 1); diagonal blocks
/// are the stacks [C^H; A - lambda I], the off-diagonal blocks -s_{ij} I, and
/// the last column carries -x_j.
inline ComplexMatrix assemble_jacobian(const ComplexMatrix& a,
                                       const PencilParameters& p,
                                       Complex lambda, const ComplexMatrix& x) {
  const int n = a.rows();
  const int m = p.C.cols();
  const int k = p.S.rows();
  require(a.cols() == n, Errc::dimension_mismatch, "A must be square");
  require(x.rows() == n && x.cols() == k, Errc::dimension_mismatch,
          "X must be n x k");

  ComplexMatrix ch = p.C.adjoint();
  ComplexMatrix am = shifted(a, lambda);

  ComplexMatrix jac((n + m) * k, n * k + 1);
  for (int j = k - 1; j >= 0; --j) {
    int br = (k - 1 - j) * (n + m);    // first row of this equation group
    int bc = (k - 1 - j) * n;          // column block of y_j
    jac.set_block(br, bc, ch);
    jac.set_block(br + m, bc, am);
    // Coupling -s_{ij} I into the column blocks of y_i, i < j.
    for (int i = 0; i < j; ++i) {
      Complex sij = p.S(i, j);
      if (sij == 0.0) continue;
      int bci = (k - 1 - i) * n;
      for (int row = 0; row < n; ++row) jac(br + m + row, bci + row) = -sij;
    }
    // Last column: derivative in lambda contributes -x_j.
    for (int row = 0; row < n; ++row)
      jac(br + m + row, n * k) = -x(row, j);
  }
  return jac;
}

}  // namespace defeig
