#pragma once

#include <map>
#include <optional>

#include "siglab/kernels.hpp"
#include "siglab/module.hpp"
#include "siglab/sparse.hpp"

namespace siglab {

/// Degree-homogeneous graded operator: every source degree p maps into a
/// single target degree g(p).  Differentials (p -> p-1), projections
/// (p -> p), homotopies (p -> p+1) and duality operators (p -> n-p) are
/// all of this form.  Blocks are stored in per-degree local indices.
class GradedOperator {
 public:
  GradedOperator() = default;
  GradedOperator(ModulePtr src, ModulePtr dst) : src_(src), dst_(dst) {}

  /// Operator with no blocks (zero).
  static GradedOperator zero(ModulePtr src, ModulePtr dst) {
    return GradedOperator(src, dst);
  }
  static GradedOperator identity(ModulePtr m);

  const ModulePtr& src() const { return src_; }
  const ModulePtr& dst() const { return dst_; }

  bool has_block(int src_deg) const { return blocks_.count(src_deg) != 0; }
  int target_degree(int src_deg) const;
  /// Block for src degree p (rows = dst rank at g(p), cols = src rank at p).
  const SparseMat& block(int src_deg) const;
  SparseMat& block_mut(int src_deg, int dst_deg);
  const std::map<int, std::pair<int, SparseMat>>& blocks() const {
    return blocks_;
  }

  void set_entry(int src_deg, int dst_deg, int dst_local, int src_local,
                 GQ v);
  void add_entry(int src_deg, int dst_deg, int dst_local, int src_local,
                 const GQ& v);

  bool is_zero() const;
  GradedOperator operator-() const;
  GradedOperator scaled(const GQ& c) const;
  /// Multiplies the degree-p block by c(p).
  GradedOperator scaled_by_degree(
      const std::function<GQ(int)>& c) const;

  /// Sum; both operators must agree on target degrees where both have
  /// blocks, otherwise GradingMismatch is thrown.
  GradedOperator operator+(const GradedOperator& o) const;
  GradedOperator operator-(const GradedOperator& o) const;

  /// Composition this o f (apply f first).
  GradedOperator compose(const GradedOperator& f) const;

  /// Adjoint with respect to the preferred orthonormal bases: blocks are
  /// conjugate-transposed and the grade map is inverted (it must be
  /// injective on the degrees that carry blocks).
  GradedOperator adjoint() const;

  bool operator==(const GradedOperator& o) const;

  /// Exact squared propagation over all blocks.
  Q propagation2() const;
  double propagation() const;

  /// Expand to a single matrix over the modules' global bases.
  SparseMat flatten() const;

  size_t nnz() const;

 private:
  ModulePtr src_, dst_;
  // src_deg -> (dst_deg, block)
  std::map<int, std::pair<int, SparseMat>> blocks_;
};

/// Ungraded operator on / between total modules.  B +- S, path samples and
/// congruence pivots live here.
class FlatOperator {
 public:
  FlatOperator() = default;
  FlatOperator(ModulePtr src, ModulePtr dst, SparseMat m)
      : src_(src), dst_(dst), mat_(std::move(m)) {}

  static FlatOperator from_graded(const GradedOperator& g) {
    return FlatOperator(g.src(), g.dst(), g.flatten());
  }
  static FlatOperator identity(ModulePtr m) {
    return FlatOperator(m, m, SparseMat::identity(m->rank()));
  }

  const ModulePtr& src() const { return src_; }
  const ModulePtr& dst() const { return dst_; }
  const SparseMat& mat() const { return mat_; }
  SparseMat& mat_mut() { return mat_; }

  FlatOperator operator+(const FlatOperator& o) const {
    return {src_, dst_, mat_ + o.mat_};
  }
  FlatOperator operator-(const FlatOperator& o) const {
    return {src_, dst_, mat_ - o.mat_};
  }
  FlatOperator operator-() const { return {src_, dst_, -mat_}; }
  FlatOperator scaled(const GQ& c) const { return {src_, dst_, mat_.scaled(c)}; }
  FlatOperator compose(const FlatOperator& f) const {
    return {f.src_, dst_, kernels::spmm(mat_, f.mat_)};
  }
  FlatOperator adjoint() const { return {dst_, src_, mat_.conj_transpose()}; }

  bool is_hermitian() const { return mat_ == mat_.conj_transpose(); }

  Q propagation2() const {
    return kernels::propagation2(mat_, *dst_, *src_);
  }
  double propagation() const;

  /// Exact determinant (square only, via dense elimination).
  GQ det() const { return DenseMat::from_sparse(mat_).det(); }

 private:
  ModulePtr src_, dst_;
  SparseMat mat_;
};

}  // namespace siglab
