#pragma once

#include "defeig/complex_matrix.hpp"

// Bundled test matrices with known defective eigenvalue structure. These are
// the reference problems exercised by the `fixtures` CLI subcommand and the
// acceptance suite; each one is embedded so the binary needs no data files.

namespace defeig::fixtures {

/// 20x20 integer matrix with eigenvalues 2 and 3; the nonzero Segre
/// characteristics are {4,3,3} at 2 (support 3x3) and {5,5} at 3
/// (support 2x5).
inline ComplexMatrix grid20() {
  return ComplexMatrix::from_rows({
      {0, 4, 0, -4, 0, -2, 1, 0, 0, -1, -1, -1, -1, 2, 1, 0, 0, -1, 0, 0},
      {0, 3, 3, -4, 1, 0, 4, 1, -1, -1, 0, 0, 0, 0, 0, -2, 0, 0, -1, -1},
      {1, -4, 2, 10, -3, 1, -7, -2, -1, 3, 2, 0, 0, -1, 0, 3, -1, 1, 1, 2},
      {-1, -1, 2, 5, -2, -1, -5, -1, -1, 2, 0, -1, 0, 1, 0, 2, -1, -1, -1, 1},
      {-1, -2, 2, 1, 1, 1, -1, 0, -2, 1, 0, 0, 0, 1, 0, 0, -1, -1, 0, 0},
      {1, 4, 1, -12, 4, 2, 13, 3, 0, -4, 0, 0, -2, -1, 1, -6, 1, 1, 0, -3},
      {-1, -1, 1, 5, -2, 0, -4, -2, 0, 1, -1, 0, 0, 1, 0, 4, 0, -1, -1, 2},
      {1, 2, -4, 0, 1, 0, 1, 1, 4, -2, -1, 1, 0, -1, 0, 1, 2, 1, 0, 1},
      {0, -5, 2, 10, -5, -1, -10, -2, -1, 6, 3, -2, 0, 0, 0, 3, -3, 0, 1, 2},
      {1, 1, 1, -1, 2, 2, 4, 0, 1, -1, -1, 2, 0, -1, 0, 0, 2, 1, -1, 0},
      {1, -1, 0, 2, 1, 2, 1, 0, 1, -1, 3, 2, 0, -1, 0, 0, 1, 1, -1, 0},
      {-1, -3, 0, 5, -1, 2, -4, -1, 0, 1, -1, 4, 4, 1, -2, 2, 0, -1, 0, 1},
      {-2, 0, 0, -1, 0, 0, 0, 0, 0, 0, -1, 0, 3, 2, 0, 0, 0, -1, 0, 0},
      {-3, 4, -1, -4, 0, -2, 1, 0, 0, -1, -1, -1, -2, 5, 2, 0, 0, -1, 1, 0},
      {-2, 0, 0, -1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 2, 3, 0, 0, -1, 0, 0},
      {0, 0, -2, 3, 1, 2, -1, -1, 2, -2, -2, 2, 0, 0, 0, 5, 2, 0, 0, 1},
      {6, 3, -6, 3, 6, 4, 7, 0, 7, -7, 1, 5, -2, -6, 1, 0, 8, 6, -1, 0},
      {0, 2, -4, -4, 1, -1, 4, 1, 0, -1, 0, -1, -1, 0, 1, -2, 0, 3, 4, -1},
      {1, -4, -1, 11, -4, 1, -8, -3, -1, 3, 2, 0, 0, -1, 0, 4, -1, 1, 4, 3},
      {0, 0, -1, 1, -2, 0, -1, -2, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 4},
  });
}

/// Eigenvalue estimates for grid20 as a plain QR eigensolver reports them:
/// one from the cluster around 2, one from the cluster around 3.
inline Complex grid20_lambda0_near_2() {
  return {1.999881443477439, -0.000118714860725};
}
inline Complex grid20_lambda0_near_3() {
  return {3.001287762162967, 0.0};
}

/// 5x5 matrix with the single eigenvalue 2 of multiplicity support 1x5
/// (one Jordan block). The 1e4-sized entries make the unscaled backward
/// error bound weak, which is what the orthonormalization pass repairs.
inline ComplexMatrix jbiteA() {
  return ComplexMatrix::from_rows({
      {2, 1, 0, 0, 0},
      {0, -8, 1, 0, 0},
      {0, 0, 2, 1, 0},
      {0, 0, 0, 2, 1},
      {0, -10000, 1000, -100, 12},
  });
}

/// jbiteA plus a fixed random-looking perturbation of magnitude about 1e-5,
/// standing in for empirical data of jbiteA.
inline ComplexMatrix jbiteA_perturbed() {
  ComplexMatrix p = ComplexMatrix::from_rows({
      {-0.092, -0.653, -0.201, -0.416, -0.787},
      {-0.135, -0.218, 0.054, -0.136, -0.255},
      {0.651, 0.663, -0.166, -0.969, -0.603},
      {-0.833, 0.607, 0.314, 0.969, -0.020},
      {-0.733, -0.879, 0.256, -0.665, -0.321},
  });
  return jbiteA() + Complex(1e-5) * p;
}

/// 8x8 matrix with a simple eigenvalue 2.001 and a defective eigenvalue 2
/// of Segre characteristic {5,2}, i.e. multiplicity support 2x2. The
/// spectral projector at 2 has norm ~1e14, so cluster means fail here while
/// the 2x2 pseudo-eigenvalue stays perfectly conditioned.
inline ComplexMatrix example4() {
  return ComplexMatrix::from_rows({
      {3.006, 2, 1.005, -1.001, -0.002, -0.001, -0.001, -1},
      {5, 2, 5, -1, -2, -1, -1, 0},
      {-5.006, -3, -3.005, 2.001, 3.002, 2.001, 0.001, 2},
      {-6, -1, -6, 3, 5, 3, 0, 1},
      {-5, -1, -5, 1, 6, 3, 0, 1},
      {1, 0, 1, 0, -1, 1, 0, 0},
      {-4, -2, -4, 1, 3, 2, 2, 2},
      {5, 0, 5, -1, -2, -1, -1, 2},
  });
}

/// Matrix near example4 with a single eigenvalue 2.000125 of Jordan block
/// sizes {6,2} (multiplicity support still 2x2), printed to 14 digits.
inline ComplexMatrix matrixB() {
  return ComplexMatrix::from_rows({
      {3.0059955942896, 1.9999978851470, 1.0049959180573, -1.0010020728471,
       -0.0020046893569, -0.0010002300301, -0.0010132897111, -0.9999977586058},
      {4.9999998736434, 1.9999937661529, 5.0000001193777, -1.0000000065301,
       -2.0000000129428, -0.9999999934070, -0.9999999926252, -0.0000169379637},
      {-5.0060008381014, -3.0000021146845, -3.0050076499797, 2.0009979267360,
       3.0019953102172, 2.0009997699688, 0.0009867094117, 2.0000022421372},
      {-5.9999927405774, -1.0000021677309, -6.0000074892946, 2.9999962015789,
       4.9999997701478, 2.9999999999775, -0.0000002324249, 0.9999978331627},
      {-4.9999995930006, -0.9999961877596, -5.0000095377366, 0.9999880178349,
       5.9999870716625, 3.0000002295144, -0.0000150335883, 0.9999994536709},
      {0.9999971940837, -0.0000010574036, 1.0000006545259, -0.0000047736356,
       -1.0000023807994, 0.9999966612522, -0.0000036987224, -0.0000054161918},
      {-4.0000092166543, -1.9999997569827, -3.9999765043908, 1.0000142841290,
       3.0000142782479, 2.0000000005386, 2.0000249853630, 2.0000002431865},
      {4.9999998983338, 0.0000026655939, 5.0000001062663, -0.9999999958672,
       -1.9999999894366, -1.0000000065916, -1.0000000120790, 2.0000133696815},
  });
}

}  // namespace defeig::fixtures
