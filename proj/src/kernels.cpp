#include "siglab/kernels.hpp"

#include <algorithm>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace siglab::kernels {

Mode& default_mode() {
  static Mode m = Mode::parallel;
  return m;
}

// Each output row is owned by exactly one thread and is accumulated in a
// fixed order (A-row entries ascending, B-rows ascending by column), so
// serial and parallel runs agree bit for bit.
static void spmm_row(const SparseMat& a, const SparseMat& b, int i,
                     std::vector<GQ>& acc, std::vector<char>& mark,
                     std::vector<int>& touched, SparseMat& out) {
  touched.clear();
  for (auto& [k, av] : a.row(i)) {
    for (auto& [j, bv] : b.row(k)) {
      if (!mark[j]) {
        mark[j] = 1;
        touched.push_back(j);
      }
      acc[j] += av * bv;
    }
  }
  std::sort(touched.begin(), touched.end());
  auto& row = out.row_mut(i);
  row.clear();
  for (int j : touched) {
    if (!acc[j].is_zero()) row.push_back({j, acc[j]});
    acc[j] = GQ();
    mark[j] = 0;
  }
}

SparseMat spmm_serial(const SparseMat& a, const SparseMat& b) {
  assert(a.cols() == b.rows());
  SparseMat out(a.rows(), b.cols());
  std::vector<GQ> acc(b.cols());
  std::vector<char> mark(b.cols(), 0);
  std::vector<int> touched;
  for (int i = 0; i < a.rows(); ++i) spmm_row(a, b, i, acc, mark, touched, out);
  return out;
}

SparseMat spmm_parallel(const SparseMat& a, const SparseMat& b) {
  assert(a.cols() == b.rows());
  SparseMat out(a.rows(), b.cols());
#pragma omp parallel
  {
    std::vector<GQ> acc(b.cols());
    std::vector<char> mark(b.cols(), 0);
    std::vector<int> touched;
#pragma omp for schedule(dynamic, 16)
    for (int i = 0; i < a.rows(); ++i)
      spmm_row(a, b, i, acc, mark, touched, out);
  }
  return out;
}

SparseMat spmm(const SparseMat& a, const SparseMat& b) {
  return default_mode() == Mode::parallel ? spmm_parallel(a, b)
                                          : spmm_serial(a, b);
}

FloatCSR FloatCSR::from(const SparseMat& m) {
  FloatCSR c;
  c.rows = m.rows();
  c.cols = m.cols();
  c.ptr.reserve(m.rows() + 1);
  c.ptr.push_back(0);
  for (int i = 0; i < m.rows(); ++i) {
    for (auto& [j, v] : m.row(i)) {
      c.col.push_back(j);
      c.val.push_back(v.to_complex());
    }
    c.ptr.push_back((int)c.col.size());
  }
  return c;
}

void spmv_serial(const FloatCSR& a, const cd* x, cd* y) {
  for (int i = 0; i < a.rows; ++i) {
    cd s = 0.0;
    for (int k = a.ptr[i]; k < a.ptr[i + 1]; ++k) s += a.val[k] * x[a.col[k]];
    y[i] = s;
  }
}

void spmv_parallel(const FloatCSR& a, const cd* x, cd* y) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) {
    cd s = 0.0;
    for (int k = a.ptr[i]; k < a.ptr[i + 1]; ++k) s += a.val[k] * x[a.col[k]];
    y[i] = s;
  }
}

void spmv(const FloatCSR& a, const cd* x, cd* y) {
  if (default_mode() == Mode::parallel)
    spmv_parallel(a, x, y);
  else
    spmv_serial(a, x, y);
}

static Q row_max_dist2(const SparseMat& m, const ControlledModule& rows,
                       const ControlledModule& cols, int i) {
  Q best(0);
  for (auto& [j, v] : m.row(i)) {
    (void)v;
    Q d = rows.space().dist2(rows.elem(i).loc, cols.elem(j).loc);
    if (d > best) best = std::move(d);
  }
  return best;
}

Q propagation2_serial(const SparseMat& m, const ControlledModule& rows,
                      const ControlledModule& cols) {
  Q best(0);
  for (int i = 0; i < m.rows(); ++i) {
    Q d = row_max_dist2(m, rows, cols, i);
    if (d > best) best = std::move(d);
  }
  return best;
}

Q propagation2_parallel(const SparseMat& m, const ControlledModule& rows,
                        const ControlledModule& cols) {
  std::vector<Q> per_row(m.rows());
#pragma omp parallel for schedule(dynamic, 64)
  for (int i = 0; i < m.rows(); ++i)
    per_row[i] = row_max_dist2(m, rows, cols, i);
  Q best(0);
  for (auto& d : per_row)
    if (d > best) best = d;
  return best;
}

Q propagation2(const SparseMat& m, const ControlledModule& rows,
               const ControlledModule& cols) {
  return default_mode() == Mode::parallel ? propagation2_parallel(m, rows, cols)
                                          : propagation2_serial(m, rows, cols);
}

Q support_propagation2(const std::vector<std::pair<int, int>>& support,
                       const ControlledModule& rows,
                       const ControlledModule& cols, Mode mode) {
  std::vector<Q> d(support.size());
  if (mode == Mode::parallel) {
#pragma omp parallel for schedule(static)
    for (size_t k = 0; k < support.size(); ++k)
      d[k] = rows.space().dist2(rows.elem(support[k].first).loc,
                                cols.elem(support[k].second).loc);
  } else {
    for (size_t k = 0; k < support.size(); ++k)
      d[k] = rows.space().dist2(rows.elem(support[k].first).loc,
                                cols.elem(support[k].second).loc);
  }
  Q best(0);
  for (auto& x : d)
    if (x > best) best = x;
  return best;
}

}  // namespace siglab::kernels
