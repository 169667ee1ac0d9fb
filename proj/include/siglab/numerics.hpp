#pragma once

#include "siglab/operators.hpp"

namespace siglab {

/// Largest singular value of an exact operator along the float route:
/// power iteration with a deterministic start vector, relative accuracy
/// target `tol`.  Repeated calls return bitwise identical results.
double operator_norm_estimate(const SparseMat& a, double tol = 1e-9);
double operator_norm_estimate(const FlatOperator& a, double tol = 1e-9);

/// Smallest singular value: dense SVD up to `dense_cutoff` rows/columns,
/// sparse LU plus inverse power iteration beyond it.  A matrix that is
/// singular to working precision reports (near) zero.
double min_singular_value(const SparseMat& a, double tol = 1e-9,
                          int dense_cutoff = 1024);
double min_singular_value(const FlatOperator& a, double tol = 1e-9,
                          int dense_cutoff = 1024);

}  // namespace siglab
