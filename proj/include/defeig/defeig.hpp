#pragma once

// Umbrella header: accurate computation of defective eigenvalues of dense
// complex matrices through the regularized least-squares formulation
// (pseudo-eigenvalues), with multiplicity-support identification, condition
// and backward-error diagnostics, and the orthonormalization refinement.

#include "defeig/complex_matrix.hpp"
#include "defeig/eigenvalues.hpp"
#include "defeig/errors.hpp"
#include "defeig/fixtures.hpp"
#include "defeig/identify.hpp"
#include "defeig/inverse_iteration.hpp"
#include "defeig/least_squares.hpp"
#include "defeig/mapping.hpp"
#include "defeig/matrix_io.hpp"
#include "defeig/qr.hpp"
#include "defeig/random.hpp"
#include "defeig/refine.hpp"
#include "defeig/solver.hpp"
#include "defeig/svd.hpp"
