// Float spectral estimates over the exact layer.  Everything here is an
// estimate by construction; the exact certificates elsewhere never depend
// on these numbers, they only report them.

#include "siglab/numerics.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <limits>

#include "spectral.hpp"

namespace siglab {

namespace spectral {

double norm(const SpMat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0 || m.nonZeros() == 0) return 0.0;
  const SpMat mh = m.adjoint();
  const double lam = largest_eigenvalue(
      m.cols(), tol, [&](const Eigen::VectorXcd& v) { return mh * (m * v); });
  return std::sqrt(lam);
}

double min_singular_value(const SpMat& m, double tol, int dense_cutoff) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) <= dense_cutoff || m.rows() != m.cols()) {
    const Eigen::MatrixXcd dense(m);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
    const auto& sv = svd.singularValues();
    return sv.size() ? double(sv(sv.size() - 1)) : 0.0;
  }
  SpMat a = m;
  a.makeCompressed();
  Eigen::SparseLU<SpMat> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) return 0.0;
  SpMat ah = SpMat(m.adjoint());
  ah.makeCompressed();
  Eigen::SparseLU<SpMat> luh;
  luh.compute(ah);
  if (luh.info() != Eigen::Success) return 0.0;
  // largest eigenvalue of (A A*)^{-1} is 1 / sigma_min^2
  const double lam =
      largest_eigenvalue(m.rows(), tol, [&](const Eigen::VectorXcd& v) {
        return luh.solve(Eigen::VectorXcd(lu.solve(v))).eval();
      });
  if (lam <= 0.0) return 0.0;
  if (std::isinf(lam)) return 0.0;  // factorization blew up: singular
  return 1.0 / std::sqrt(lam);
}

}  // namespace spectral

double operator_norm_estimate(const SparseMat& a, double tol) {
  return spectral::norm(spectral::to_eigen(a), tol);
}

double operator_norm_estimate(const FlatOperator& a, double tol) {
  return operator_norm_estimate(a.mat(), tol);
}

double min_singular_value(const SparseMat& a, double tol, int dense_cutoff) {
  return spectral::min_singular_value(spectral::to_eigen(a), tol,
                                      dense_cutoff);
}

double min_singular_value(const FlatOperator& a, double tol,
                          int dense_cutoff) {
  return min_singular_value(a.mat(), tol, dense_cutoff);
}

}  // namespace siglab
