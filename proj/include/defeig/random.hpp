#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "defeig/complex_matrix.hpp"

namespace defeig {

/// Deterministic standard-normal sampler. mt19937_64 output is pinned by the
/// C++ standard and the Box-Muller transform below avoids
/// std::normal_distribution, whose algorithm is implementation-defined, so a
/// given seed yields the same stream on every platform.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // Map 53 high bits into (0,1]; u1 > 0 keeps the log finite.
    double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
    double u2 = static_cast<double>(eng_() >> 11) * 0x1p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Complex next_complex() {
    double re = next();
    double im = next();
    return Complex(re, im);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline ComplexMatrix random_normal_matrix(int rows, int cols,
                                          std::uint64_t seed) {
  NormalSampler rng(seed);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.next_complex();
  return m;
}

}  // namespace defeig
