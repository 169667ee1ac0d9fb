#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "siglab/scalar.hpp"

namespace siglab {

/// Sparse matrix over the Gaussian rationals, stored by rows with
/// column-sorted entries.  Exact; no entry is ever silently rounded.
class SparseMat {
 public:
  using Entry = std::pair<int, GQ>;
  using Row = std::vector<Entry>;

  SparseMat() : rows_(0), cols_(0) {}
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  static SparseMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Row& row(int i) const { return data_[i]; }
  Row& row_mut(int i) { return data_[i]; }

  size_t nnz() const;
  bool is_zero() const;

  /// Sets (asserting the slot is not already filled); keeps rows sorted.
  void set(int i, int j, GQ v);
  /// Adds into the slot, dropping it if the sum cancels.
  void add_at(int i, int j, const GQ& v);
  GQ get(int i, int j) const;

  SparseMat& operator+=(const SparseMat& o);
  SparseMat& operator-=(const SparseMat& o);
  friend SparseMat operator+(SparseMat a, const SparseMat& b) { return a += b; }
  friend SparseMat operator-(SparseMat a, const SparseMat& b) { return a -= b; }
  SparseMat operator-() const;
  SparseMat scaled(const GQ& c) const;

  /// Conjugate transpose.
  SparseMat conj_transpose() const;
  SparseMat transpose() const;

  bool operator==(const SparseMat& o) const;

  void for_each(const std::function<void(int, int, const GQ&)>& f) const;

  /// Column-major apply to an exact vector: y = A x.
  std::vector<GQ> apply(const std::vector<GQ>& x) const;

 private:
  int rows_, cols_;
  std::vector<Row> data_;
};

/// Dense exact matrix for the small solves (contractions, homotopy
/// synthesis, determinants).  Row-major.
class DenseMat {
 public:
  DenseMat() : rows_(0), cols_(0) {}
  DenseMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static DenseMat identity(int n);
  static DenseMat from_sparse(const SparseMat& s);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GQ& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
  const GQ& at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

  DenseMat mul(const DenseMat& o) const;
  DenseMat conj_transpose() const;

  /// Gauss-Jordan inverse; throws NotInvertible if singular.
  DenseMat inverse() const;
  /// Exact determinant via fraction-free-ish elimination.
  GQ det() const;

  SparseMat to_sparse() const;

 private:
  int rows_, cols_;
  std::vector<GQ> a_;
};

/// Solves the exact consistent linear system A x = b (general shape) by
/// Gaussian elimination; returns false if inconsistent.  Free variables
/// are set to zero, so the output is deterministic.
bool solve_exact(const DenseMat& A, const std::vector<GQ>& b,
                 std::vector<GQ>& x);

}  // namespace siglab
