#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <vector>

#include "defeig/errors.hpp"

namespace defeig {

using Complex = std::complex<double>;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Dense complex matrix, row-major, double precision real/imag parts.
/// Plain value type; all algorithms in this library take matrices by
/// const reference and return fresh values.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  // Zero-initialized rows x cols matrix.
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    require(rows >= 0 && cols >= 0, Errc::invalid_argument,
            "matrix dimensions must be non-negative");
  }

  ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    require(rows >= 1 && cols >= 1, Errc::invalid_argument,
            "matrix dimensions must be positive");
    require(a_.size() == static_cast<std::size_t>(rows) * cols,
            Errc::dimension_mismatch, "entry count does not match dimensions");
    ensure_finite();
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
  }

  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows) {
    int r = static_cast<int>(rows.size());
    require(r > 0, Errc::invalid_argument, "empty row list");
    int c = static_cast<int>(rows.begin()->size());
    ComplexMatrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
      require(static_cast<int>(row.size()) == c, Errc::dimension_mismatch,
              "ragged row list");
      int j = 0;
      for (Complex v : row) m(i, j++) = v;
      ++i;
    }
    m.ensure_finite();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  Complex& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  Complex operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return a_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  ComplexMatrix block(int r0, int c0, int nr, int nc) const {
    require(r0 >= 0 && c0 >= 0 && r0 + nr <= rows_ && c0 + nc <= cols_,
            Errc::dimension_mismatch, "block out of range");
    ComplexMatrix m(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void set_block(int r0, int c0, const ComplexMatrix& m) {
    require(r0 >= 0 && c0 >= 0 && r0 + m.rows() <= rows_ &&
                c0 + m.cols() <= cols_,
            Errc::dimension_mismatch, "block out of range");
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
  }

  ComplexMatrix col(int j) const { return block(0, j, rows_, 1); }
  void set_col(int j, const ComplexMatrix& v) { set_block(0, j, v); }

  ComplexMatrix& operator+=(const ComplexMatrix& b) {
    require(rows_ == b.rows_ && cols_ == b.cols_, Errc::dimension_mismatch,
            "matrix addition shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& b) {
    require(rows_ == b.rows_ && cols_ == b.cols_, Errc::dimension_mismatch,
            "matrix subtraction shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
    a *= s;
    return a;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b) {
    require(a.cols_ == b.rows_, Errc::dimension_mismatch,
            "matrix product shape mismatch");
    ComplexMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int l = 0; l < a.cols_; ++l) {
        Complex ail = a(i, l);
        if (ail == 0.0) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
      }
    }
    return c;
  }

  // Exact elementwise comparison; used by determinism tests.
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_finite() const {
    for (const auto& v : a_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  void ensure_finite() const {
    require(is_finite(), Errc::invalid_argument,
            "matrix contains a NaN or Inf entry");
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> a_;
};

// A - lambda*I for square A.
inline ComplexMatrix shifted(const ComplexMatrix& a, Complex lambda) {
  require(a.rows() == a.cols(), Errc::dimension_mismatch,
          "shift requires a square matrix");
  ComplexMatrix m = a;
  for (int i = 0; i < a.rows(); ++i) m(i, i) -= lambda;
  return m;
}

// Stacks a on top of b (matching column counts).
inline ComplexMatrix vstack(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.cols() == b.cols(), Errc::dimension_mismatch,
          "vstack column mismatch");
  ComplexMatrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

inline double column_norm(const ComplexMatrix& m, int j) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace defeig
