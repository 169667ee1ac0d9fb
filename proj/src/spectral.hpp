// Internal float spectral core shared by the public numeric estimates and
// path certification: conversion of exact matrices to Eigen form and
// extremal singular values by deterministic power iteration.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "siglab/sparse.hpp"

namespace siglab::spectral {

using CD = std::complex<double>;
using SpMat = Eigen::SparseMatrix<CD>;

inline SpMat to_eigen(const SparseMat& a) {
  std::vector<Eigen::Triplet<CD>> trip;
  trip.reserve(a.nnz());
  a.for_each([&](int i, int j, const GQ& v) {
    trip.emplace_back(i, j, CD(v.re.get_d(), v.im.get_d()));
  });
  SpMat m(a.rows(), a.cols());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

/// Fixed full-support start vector; no randomness, so repeated runs of
/// every estimate below are bitwise reproducible.
inline Eigen::VectorXcd deterministic_start(Eigen::Index n) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = CD(std::cos(0.7 * double(i + 1)), std::sin(1.3 * double(i + 1)));
  v.normalize();
  return v;
}

inline constexpr int kPowerIterationCap = 20000;

/// Power iteration on the Hermitian PSD operator `apply`, returning the
/// largest eigenvalue; stops when the residual certifies the Rayleigh
/// quotient to relative `tol` or at `max_it` iterations.
template <typename Apply>
double largest_eigenvalue(Eigen::Index n, double tol, Apply&& apply,
                          int max_it = kPowerIterationCap) {
  if (n == 0) return 0.0;
  Eigen::VectorXcd v = deterministic_start(n);
  double lam = 0.0;
  for (int it = 0; it < max_it; ++it) {
    Eigen::VectorXcd w = apply(v);
    if (!w.allFinite()) return std::numeric_limits<double>::infinity();
    const double rho = std::real(v.dot(w));
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double residual = (w - rho * v).norm();
    v = w / nw;
    lam = rho;
    if (it > 1 && residual <= tol * std::max(rho, 1e-300)) break;
  }
  return std::max(lam, 0.0);
}

/// Operator norm of a general (not necessarily Hermitian) map given by a
/// matvec and its adjoint matvec: sqrt of the top eigenvalue of A*A.
template <typename Apply, typename ApplyAdj>
double norm_of_map(Eigen::Index n, double tol, Apply&& apply,
                   ApplyAdj&& apply_adj, int max_it = kPowerIterationCap) {
  const double lam = largest_eigenvalue(
      n, tol,
      [&](const Eigen::VectorXcd& v) {
        return apply_adj(Eigen::VectorXcd(apply(v))).eval();
      },
      max_it);
  return std::sqrt(std::max(lam, 0.0));
}

/// Largest singular value by power iteration on A*A.
double norm(const SpMat& m, double tol = 1e-9);

/// Smallest singular value; dense SVD below the cutoff, sparse LU with
/// inverse iteration beyond it (square input on that branch).
double min_singular_value(const SpMat& m, double tol = 1e-9,
                          int dense_cutoff = 1024);

}  // namespace siglab::spectral
