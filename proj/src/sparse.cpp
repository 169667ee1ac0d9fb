#include "siglab/sparse.hpp"

#include <algorithm>
#include <cassert>

#include "siglab/errors.hpp"

namespace siglab {

SparseMat SparseMat::identity(int n) {
  SparseMat m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i].push_back({i, GQ(1)});
  return m;
}

size_t SparseMat::nnz() const {
  size_t n = 0;
  for (auto& r : data_) n += r.size();
  return n;
}

bool SparseMat::is_zero() const { return nnz() == 0; }

void SparseMat::set(int i, int j, GQ v) {
  if (v.is_zero()) return;
  auto& r = data_[i];
  auto it = std::lower_bound(
      r.begin(), r.end(), j,
      [](const Entry& e, int col) { return e.first < col; });
  assert(it == r.end() || it->first != j);
  r.insert(it, {j, std::move(v)});
}

void SparseMat::add_at(int i, int j, const GQ& v) {
  if (v.is_zero()) return;
  auto& r = data_[i];
  auto it = std::lower_bound(
      r.begin(), r.end(), j,
      [](const Entry& e, int col) { return e.first < col; });
  if (it != r.end() && it->first == j) {
    it->second += v;
    if (it->second.is_zero()) r.erase(it);
  } else {
    r.insert(it, {j, v});
  }
}

GQ SparseMat::get(int i, int j) const {
  const auto& r = data_[i];
  auto it = std::lower_bound(
      r.begin(), r.end(), j,
      [](const Entry& e, int col) { return e.first < col; });
  if (it != r.end() && it->first == j) return it->second;
  return GQ();
}

SparseMat& SparseMat::operator+=(const SparseMat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (int i = 0; i < rows_; ++i) {
    Row merged;
    merged.reserve(data_[i].size() + o.data_[i].size());
    auto a = data_[i].begin(), ae = data_[i].end();
    auto b = o.data_[i].begin(), be = o.data_[i].end();
    while (a != ae || b != be) {
      if (b == be || (a != ae && a->first < b->first)) {
        merged.push_back(*a++);
      } else if (a == ae || b->first < a->first) {
        merged.push_back(*b++);
      } else {
        GQ s = a->second + b->second;
        if (!s.is_zero()) merged.push_back({a->first, std::move(s)});
        ++a;
        ++b;
      }
    }
    data_[i] = std::move(merged);
  }
  return *this;
}

SparseMat& SparseMat::operator-=(const SparseMat& o) {
  return *this += o.operator-();
}

SparseMat SparseMat::operator-() const {
  SparseMat m(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    m.data_[i].reserve(data_[i].size());
    for (auto& [j, v] : data_[i]) m.data_[i].push_back({j, -v});
  }
  return m;
}

SparseMat SparseMat::scaled(const GQ& c) const {
  SparseMat m(rows_, cols_);
  if (c.is_zero()) return m;
  for (int i = 0; i < rows_; ++i) {
    m.data_[i].reserve(data_[i].size());
    for (auto& [j, v] : data_[i]) m.data_[i].push_back({j, c * v});
  }
  return m;
}

SparseMat SparseMat::conj_transpose() const {
  SparseMat m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (auto& [j, v] : data_[i]) m.data_[j].push_back({i, v.conj()});
  // pushed in row-major scan order, so each output row is already sorted
  return m;
}

SparseMat SparseMat::transpose() const {
  SparseMat m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (auto& [j, v] : data_[i]) m.data_[j].push_back({i, v});
  return m;
}

bool SparseMat::operator==(const SparseMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (int i = 0; i < rows_; ++i)
    if (data_[i] != o.data_[i]) return false;
  return true;
}

void SparseMat::for_each(
    const std::function<void(int, int, const GQ&)>& f) const {
  for (int i = 0; i < rows_; ++i)
    for (auto& [j, v] : data_[i]) f(i, j, v);
}

std::vector<GQ> SparseMat::apply(const std::vector<GQ>& x) const {
  assert((int)x.size() == cols_);
  std::vector<GQ> y(rows_);
  for (int i = 0; i < rows_; ++i)
    for (auto& [j, v] : data_[i]) y[i] += v * x[j];
  return y;
}

DenseMat DenseMat::identity(int n) {
  DenseMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = GQ(1);
  return m;
}

DenseMat DenseMat::from_sparse(const SparseMat& s) {
  DenseMat m(s.rows(), s.cols());
  s.for_each([&](int i, int j, const GQ& v) { m.at(i, j) = v; });
  return m;
}

DenseMat DenseMat::mul(const DenseMat& o) const {
  assert(cols_ == o.rows_);
  DenseMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const GQ& v = at(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += v * o.at(k, j);
      }
    }
  return r;
}

DenseMat DenseMat::conj_transpose() const {
  DenseMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
  return r;
}

DenseMat DenseMat::inverse() const {
  assert(rows_ == cols_);
  int n = rows_;
  DenseMat a = *this, inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!a.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0)
      throw Error(ErrorKind::NotInvertible, "singular exact matrix");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(c, j));
        std::swap(inv.at(piv, j), inv.at(c, j));
      }
    GQ d = a.at(c, c).inv();
    for (int j = 0; j < n; ++j) {
      a.at(c, j) *= d;
      inv.at(c, j) *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a.at(r, c).is_zero()) continue;
      GQ f = a.at(r, c);
      for (int j = 0; j < n; ++j) {
        a.at(r, j) -= f * a.at(c, j);
        inv.at(r, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

GQ DenseMat::det() const {
  assert(rows_ == cols_);
  int n = rows_;
  DenseMat a = *this;
  GQ d(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!a.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return GQ(0);
    if (piv != c) {
      for (int j = c; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
      d = -d;
    }
    d *= a.at(c, c);
    GQ pv = a.at(c, c).inv();
    for (int r = c + 1; r < n; ++r) {
      if (a.at(r, c).is_zero()) continue;
      GQ f = a.at(r, c) * pv;
      for (int j = c; j < n; ++j) a.at(r, j) -= f * a.at(c, j);
    }
  }
  return d;
}

SparseMat DenseMat::to_sparse() const {
  SparseMat s(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) s.set(i, j, at(i, j));
  return s;
}

bool solve_exact(const DenseMat& A, const std::vector<GQ>& b,
                 std::vector<GQ>& x) {
  int R = A.rows(), C = A.cols();
  assert((int)b.size() == R);
  DenseMat a(R, C + 1);
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < C; ++j) a.at(i, j) = A.at(i, j);
    a.at(i, C) = b[i];
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int piv = -1;
    for (int i = r; i < R; ++i)
      if (!a.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j <= C; ++j) std::swap(a.at(piv, j), a.at(r, j));
    GQ d = a.at(r, c).inv();
    for (int j = c; j <= C; ++j) a.at(r, j) *= d;
    for (int i = 0; i < R; ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      GQ f = a.at(i, c);
      for (int j = c; j <= C; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < R; ++i)
    if (!a.at(i, C).is_zero()) return false;  // inconsistent
  x.assign(C, GQ());
  for (int k = 0; k < r; ++k) x[pivot_col[k]] = a.at(k, C);
  return true;
}

}  // namespace siglab
