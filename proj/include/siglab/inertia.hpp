#pragma once

#include "siglab/kernels.hpp"
#include "siglab/sparse.hpp"

namespace siglab {

/// Signs of a Hermitian form: numbers of positive, negative and zero
/// eigenvalues (equivalently, of diagonal entries after congruence), plus
/// the exact determinant (real for a Hermitian matrix), which the
/// unit-triangular congruence transforms leave unchanged.
struct Inertia {
  int pos = 0;
  int neg = 0;
  int zero = 0;
  Q det = 1;
};

/// Exact inertia of a Hermitian matrix over the Gaussian rationals by
/// congruence elimination: real 1x1 pivots chosen by a minimum-fill
/// heuristic, antidiagonal 2x2 pivots (contributing one eigenvalue of each
/// sign) when the remaining diagonal vanishes.  No floats anywhere.
/// Throws BadInput if the matrix is not square or not exactly Hermitian.
Inertia hermitian_inertia(const SparseMat& a, kernels::Mode mode = kernels::default_mode());

}  // namespace siglab
