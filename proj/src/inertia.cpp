// Exact inertia of Hermitian Gaussian-rational matrices by congruence
// elimination.  Sylvester's law makes the diagonal signs a congruence
// invariant, so the (pos, neg, zero) counts are exact; no float enters.
// Real matrices run on a plain-rational core, complex ones on Gaussian
// rationals; both share the same elimination.

#include "siglab/inertia.hpp"

#include <algorithm>
#include <climits>
#include <utility>
#include <vector>

namespace siglab {

namespace {

// The elimination is generic over the scalar: Q for real input, GQ for
// genuinely complex input.  The traits provide the few operations whose
// spelling differs.
template <class T>
struct Ops;

template <>
struct Ops<GQ> {
  static bool is_zero(const GQ& v) { return v.is_zero(); }
  static GQ conj(const GQ& v) { return v.conj(); }
  static Q norm2(const GQ& v) { return v.norm2(); }
  static const Q& diag(const GQ& v) { return v.re; }
  static bool diag_real(const GQ& v) { return v.im == 0; }
  static GQ lift(const Q& q) { return GQ(q); }
};

template <>
struct Ops<Q> {
  static bool is_zero(const Q& v) { return v == 0; }
  static const Q& conj(const Q& v) { return v; }
  static Q norm2(const Q& v) { return v * v; }
  static const Q& diag(const Q& v) { return v; }
  static bool diag_real(const Q&) { return true; }
  static const Q& lift(const Q& q) { return q; }
};

// Rows are kept as column-sorted vectors; updates rebuild them by a
// linear merge, which keeps the dense tail of the elimination cheap.
template <class T>
using RowT = std::vector<std::pair<int, T>>;

template <class T>
const T* find_col(const RowT<T>& row, int c) {
  auto it = std::lower_bound(
      row.begin(), row.end(), c,
      [](const std::pair<int, T>& e, int col) { return e.first < col; });
  return (it != row.end() && it->first == c) ? &it->second : nullptr;
}

// row := row - f * pivot, with the listed pivot columns dropped wholesale.
template <class T>
void axpy_row(RowT<T>& row, const T& f, const RowT<T>& pivot, int skip1,
              int skip2) {
  RowT<T> out;
  out.reserve(row.size() + pivot.size());
  size_t a = 0;
  const size_t an = row.size();
  auto copy_row_until = [&](int c) {
    while (a < an && row[a].first < c) {
      if (row[a].first != skip1 && row[a].first != skip2)
        out.push_back(std::move(row[a]));
      ++a;
    }
  };
  for (const auto& [c, v] : pivot) {
    if (c == skip1 || c == skip2) continue;
    copy_row_until(c);
    if (a < an && row[a].first == c) {
      T nv = std::move(row[a].second);
      nv -= f * v;
      ++a;
      if (!Ops<T>::is_zero(nv)) out.emplace_back(c, std::move(nv));
    } else {
      T nv = -(f * v);
      if (!Ops<T>::is_zero(nv)) out.emplace_back(c, std::move(nv));
    }
  }
  copy_row_until(INT_MAX);
  row = std::move(out);
}

template <class T>
Inertia eliminate(std::vector<RowT<T>> rows, kernels::Mode mode) {
  const int n = (int)rows.size();
  std::vector<char> active((size_t)n, 1);
  Inertia out;
  int remaining = n;

  auto update_rows = [&](const std::vector<int>& affected, auto&& one_row) {
    if (mode == kernels::Mode::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
      for (long t = 0; t < (long)affected.size(); ++t)
        one_row(affected[(size_t)t]);
    } else {
      for (int r : affected) one_row(r);
    }
  };

  while (remaining > 0) {
    // Retire rows that became identically zero, then take the sparsest
    // active row as the next pivot row (minimum-fill proxy).  Eliminating
    // the sparsest row regardless of its diagonal keeps fill-in low; a
    // diagonal-first rule tends to densify the trailing block.
    int k = -1;
    size_t k_size = ~(size_t)0;
    for (int i = 0; i < n; ++i) {
      if (!active[(size_t)i]) continue;
      if (rows[(size_t)i].empty()) {
        active[(size_t)i] = 0;
        --remaining;
        out.zero += 1;
        out.det = 0;
        continue;
      }
      if (rows[(size_t)i].size() < k_size) {
        k_size = rows[(size_t)i].size();
        k = i;
      }
    }
    if (k < 0) break;

    if (find_col(rows[(size_t)k], k)) {
      // 1x1 real pivot.
      const RowT<T> pivot = std::move(rows[(size_t)k]);
      rows[(size_t)k].clear();
      const T d = *find_col(pivot, k);
      if (!Ops<T>::diag_real(d))
        throw Error(ErrorKind::BadInput,
                    "hermitian_inertia: non-real diagonal entry");
      (Ops<T>::diag(d) > 0 ? out.pos : out.neg) += 1;
      out.det *= Ops<T>::diag(d);
      std::vector<int> affected;
      affected.reserve(pivot.size());
      for (const auto& [c, v] : pivot)
        if (c != k) affected.push_back(c);
      update_rows(affected, [&](int r) {
        RowT<T>& row = rows[(size_t)r];
        T f = *find_col(row, k) / d;
        axpy_row(row, f, pivot, k, -1);
      });
      active[(size_t)k] = 0;
      --remaining;
      continue;
    }

    // Zero diagonal: 2x2 pivot [[0, p], [conj p, d]] with the sparsest
    // partner row j in the support.  Its determinant is -|p|^2 < 0, so the
    // block contributes one eigenvalue of each sign whatever d is.
    const int i = k;
    int j = -1;
    size_t j_size = ~(size_t)0;
    for (const auto& [c, v] : rows[(size_t)i])
      if (rows[(size_t)c].size() < j_size) {
        j_size = rows[(size_t)c].size();
        j = c;
      }
    const RowT<T> pi = std::move(rows[(size_t)i]);
    const RowT<T> pj = std::move(rows[(size_t)j]);
    rows[(size_t)i].clear();
    rows[(size_t)j].clear();
    const T p = *find_col(pi, j);
    const T* djp = find_col(pj, j);
    const T dj = djp ? *djp : T();
    const Q det = -Ops<T>::norm2(p);
    out.pos += 1;
    out.neg += 1;
    out.det *= det;
    std::vector<int> affected;
    for (const auto& [c, v] : pi)
      if (c != i && c != j) affected.push_back(c);
    for (const auto& [c, v] : pj)
      if (c != i && c != j && !find_col(pi, c)) affected.push_back(c);
    std::sort(affected.begin(), affected.end());
    update_rows(affected, [&](int r) {
      RowT<T>& row = rows[(size_t)r];
      const T* pa = find_col(row, i);
      const T* pb = find_col(row, j);
      T alpha = pa ? *pa : T();
      T beta = pb ? *pb : T();
      // row -= c1*row_i + c2*row_j with (c1, c2) = (alpha, beta)*inv(block);
      // at least one coefficient is nonzero, so the i/j columns are dropped.
      T c1 = (alpha * dj - beta * Ops<T>::conj(p)) / Ops<T>::lift(det);
      T c2 = (alpha * p) / Ops<T>::lift(-det);
      if (!Ops<T>::is_zero(c1)) axpy_row(row, c1, pi, i, j);
      if (!Ops<T>::is_zero(c2)) axpy_row(row, c2, pj, i, j);
    });
    active[(size_t)i] = active[(size_t)j] = 0;
    remaining -= 2;
  }
  return out;
}

}  // namespace

Inertia hermitian_inertia(const SparseMat& a, kernels::Mode mode) {
  if (a.rows() != a.cols())
    throw Error(ErrorKind::BadInput, "hermitian_inertia: matrix not square");
  if (!(a == a.conj_transpose()))
    throw Error(ErrorKind::BadInput, "hermitian_inertia: matrix not Hermitian");

  const int n = a.rows();
  bool real = true;
  for (int i = 0; i < n && real; ++i)
    for (const auto& [c, v] : a.row(i))
      if (v.im != 0) {
        real = false;
        break;
      }

  if (real) {
    std::vector<RowT<Q>> rows((size_t)n);
    for (int i = 0; i < n; ++i) {
      rows[(size_t)i].reserve(a.row(i).size());
      for (const auto& [c, v] : a.row(i)) rows[(size_t)i].emplace_back(c, v.re);
    }
    return eliminate<Q>(std::move(rows), mode);
  }
  std::vector<RowT<GQ>> rows((size_t)n);
  for (int i = 0; i < n; ++i)
    rows[(size_t)i].assign(a.row(i).begin(), a.row(i).end());
  return eliminate<GQ>(std::move(rows), mode);
}

}  // namespace siglab
