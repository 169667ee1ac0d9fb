#pragma once

#include <complex>
#include <vector>

#include "siglab/control.hpp"
#include "siglab/module.hpp"
#include "siglab/sparse.hpp"

namespace siglab::kernels {

/// Every data-parallel kernel exists in a serial reference version and an
/// OpenMP version.  The OpenMP versions partition work so that each output
/// cell is owned by exactly one thread and per-cell reduction order is
/// fixed, so both versions produce bit-identical results; the test suite
/// asserts that equality and the bench tool compares their throughput.
enum class Mode { serial, parallel };

/// Process-wide default used by the dispatching wrappers.
Mode& default_mode();

// ---- exact sparse matrix product -----------------------------------------

SparseMat spmm_serial(const SparseMat& a, const SparseMat& b);
SparseMat spmm_parallel(const SparseMat& a, const SparseMat& b);
SparseMat spmm(const SparseMat& a, const SparseMat& b);

// ---- float CSR matvec ------------------------------------------------------

using cd = std::complex<double>;

/// Compressed float shadow of a SparseMat, used by the iterative norm
/// estimators.
struct FloatCSR {
  int rows = 0, cols = 0;
  std::vector<int> ptr, col;
  std::vector<cd> val;

  static FloatCSR from(const SparseMat& m);
};

void spmv_serial(const FloatCSR& a, const cd* x, cd* y);
void spmv_parallel(const FloatCSR& a, const cd* x, cd* y);
void spmv(const FloatCSR& a, const cd* x, cd* y);

// ---- propagation scan -------------------------------------------------------

/// Exact squared propagation: max over nonzero entries (i,j) of
/// dist2(loc(row i), loc(col j)).  Returns 0 for the zero matrix.
Q propagation2_serial(const SparseMat& m, const ControlledModule& rows,
                      const ControlledModule& cols);
Q propagation2_parallel(const SparseMat& m, const ControlledModule& rows,
                        const ControlledModule& cols);
Q propagation2(const SparseMat& m, const ControlledModule& rows,
               const ControlledModule& cols);

/// Same scan over an explicit support list (row, col).
Q support_propagation2(const std::vector<std::pair<int, int>>& support,
                       const ControlledModule& rows,
                       const ControlledModule& cols, Mode mode);

}  // namespace siglab::kernels
