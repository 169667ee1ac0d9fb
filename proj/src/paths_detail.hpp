// Internal representation of path samples: factor chains with certified
// per-factor singular-value floors, the matrix-free Chebyshev evaluator
// for the inverse-approximating polynomial, and boolean support patterns
// for exact propagation bounds.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "siglab/paths.hpp"
#include "spectral.hpp"

namespace siglab::detail {

using spectral::CD;
using spectral::SpMat;
using DMat = Eigen::MatrixXcd;
using DVec = Eigen::VectorXcd;

// ---- odd polynomial p(x) = x q(x^2), q in Chebyshev form ------------------

/// Chebyshev series of q on [a, b] (the squared spectral interval).  The
/// evaluation path is Clenshaw throughout -- scalar, matrix-free matvec
/// and dense formation all share the same recurrence.
struct OddPoly {
  double a = 1.0, b = 1.0;           // domain of q = [eps^2, cap^2]
  std::vector<double> cheb;          // c_0 .. c_r

  int degree() const { return 2 * (int)cheb.size() - 1; }  // of p

  double eval_q(double u) const;
  double eval_p(double x) const { return x * eval_q(x * x); }

  /// y = q(M^2) x for Hermitian sparse M (Clenshaw, 2 matvecs per term).
  DVec apply_q(const SpMat& m, const DVec& x) const;
  DVec apply_p(const SpMat& m, const DVec& x) const;  // M q(M^2) x
  DVec apply_e(const SpMat& m, const DVec& x) const;  // M^2 q(M^2) x

  /// Dense p(M), same recurrence with matrix iterates.
  DMat dense_p(const SpMat& m) const;
};

// ---- boolean support patterns ---------------------------------------------

/// Row-major bitset matrix used to bound the support of factor products
/// exactly; distances are then evaluated on the pattern, never on floats.
struct BitPattern {
  int rows = 0, cols = 0, words = 0;
  std::vector<uint64_t> bits;

  BitPattern() = default;
  BitPattern(int r, int c)
      : rows(r), cols(c), words((c + 63) / 64), bits((size_t)r * words, 0) {}

  void set(int i, int j) {
    bits[(size_t)i * words + (size_t)(j >> 6)] |= (uint64_t)1 << (j & 63);
  }
  bool get(int i, int j) const {
    return (bits[(size_t)i * words + (size_t)(j >> 6)] >>
            (j & 63)) & 1;
  }

  static BitPattern from(const SparseMat& m);
  static BitPattern from(const SpMat& m);
  static BitPattern ident(int n);

  void or_with(const BitPattern& o);
  void or_ident();
  BitPattern mul(const BitPattern& o) const;
  /// Reflexive closure power: (this | I)^k' with k' the next power of two
  /// >= max(k, 1); a superset of the support of any polynomial of degree
  /// <= k in this pattern.
  BitPattern power_closure(int k) const;

  std::vector<std::pair<int, int>> support() const;
};

// ---- sample factors ---------------------------------------------------------

/// One factor of an active-block product, acting on [sub, sub+size) of
/// the window and as the identity elsewhere.  Every factor knows a
/// certified lower bound for its smallest singular value; bounds of
/// constant factors are cached, so segments whose legs share factors pay
/// for each bound once.
struct Factor {
  enum class Kind { sparse, dense, poly, linear, affine_e };
  Kind kind = Kind::sparse;
  int sub = 0;
  int size = 0;

  std::shared_ptr<const SpMat> sp;         // sparse
  std::shared_ptr<const SparseMat> exact;  // exact form of sp when available
  std::shared_ptr<const DMat> dn;          // dense

  // poly: p(M) for Hermitian sparse M.  affine_e reuses arg/poly for
  // I + s (e(M) - I) with e(x) = x p(x), kept matrix-free; the builder
  // supplies ||e(M) - I|| in delta_norm.
  std::shared_ptr<const SpMat> arg;
  std::shared_ptr<const OddPoly> poly;

  // linear: I + s * Delta with cached ||Delta||
  std::shared_ptr<const DMat> delta;
  double s = 0.0;
  double delta_norm = -1.0;

  mutable std::optional<double> sv_cache;
  mutable std::optional<double> norm_cache;

  void apply(DVec& window_vec) const;
  void apply_adjoint(DVec& window_vec) const;

  /// Certified sigma_min lower bound:
  ///   sparse/dense  direct estimate (LU / SVD / inverse iteration),
  ///   poly          (1 - ||e(M) - I||) / ||M||  (measured, no domain
  ///                 assumption; e(x) = x p(x)),
  ///   linear        max(0, 1 - |s| ||Delta||).
  double sv_floor(double tol) const;

  BitPattern pattern() const;

  static Factor sparse_f(int sub, std::shared_ptr<const SpMat> m,
                         std::shared_ptr<const SparseMat> exact = nullptr);
  static Factor dense_f(int sub, std::shared_ptr<const DMat> m);
  static Factor poly_f(int sub, std::shared_ptr<const SpMat> m,
                       std::shared_ptr<const OddPoly> p);
  static Factor linear_f(int sub, std::shared_ptr<const DMat> delta, double s,
                         double delta_norm);
  static Factor affine_e_f(int sub, std::shared_ptr<const SpMat> m,
                           std::shared_ptr<const OddPoly> p, double s,
                           double e_gap_norm);
};

using FactorPtr = std::shared_ptr<const Factor>;

/// Stored data of a SampleOperator: identity on the ambient basis outside
/// [offset, offset+window), product of `factors` (mathematical order,
/// i.e. factors[0] applied last) inside it.
struct SampleData {
  int dim = 0;
  int offset = 0;
  int window = 0;
  std::vector<FactorPtr> factors;
  std::shared_ptr<const SparseMat> exact_whole;  // active block, if exact

  mutable std::optional<double> sv_cache;

  DVec apply(const DVec& ambient_vec) const;
  DVec apply_adjoint(const DVec& ambient_vec) const;
  double min_sv(double tol) const;
};

SampleOperator make_sample(int dim, int offset,
                           std::vector<FactorPtr> factors,
                           std::shared_ptr<const SparseMat> exact_whole =
                               nullptr);

/// Float shadow of an exact matrix as a shared sparse factor.
std::shared_ptr<const SpMat> shadow(const SparseMat& m);

}  // namespace siglab::detail
