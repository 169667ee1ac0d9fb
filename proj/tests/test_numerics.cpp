// Float spectral estimates: frozen values, agreement with an independent
// dense decomposition, the sparse branch against the dense one, and
// bitwise determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "siglab/corpus.hpp"
#include "siglab/numerics.hpp"
#include "siglab/poincare.hpp"

using namespace siglab;

namespace {

SparseMat diag_mat(const std::vector<GQ>& vals) {
  SparseMat m((int)vals.size(), (int)vals.size());
  for (int i = 0; i < (int)vals.size(); ++i)
    if (!vals[(size_t)i].is_zero()) m.set(i, i, vals[(size_t)i]);
  return m;
}

// Independent dense oracle: own conversion, Jacobi SVD.
Eigen::MatrixXcd to_dense(const SparseMat& a) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(a.rows(), a.cols());
  a.for_each([&](int i, int j, const GQ& v) {
    d(i, j) = std::complex<double>(v.re.get_d(), v.im.get_d());
  });
  return d;
}

std::pair<double, double> svd_extremes(const SparseMat& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_dense(a));
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return {0.0, 0.0};
  return {double(sv(0)), double(sv(sv.size() - 1))};
}

}  // namespace

TEST_CASE("operator norms of known matrices") {
  CHECK(operator_norm_estimate(SparseMat::identity(5)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(operator_norm_estimate(diag_mat({GQ(3), GQ(Q(0), Q(-4))})) ==
        doctest::Approx(4.0).epsilon(1e-9));

  SparseMat nil(2, 2);
  nil.set(0, 1, GQ(2));
  CHECK(operator_norm_estimate(nil) == doctest::Approx(2.0).epsilon(1e-9));

  CHECK(operator_norm_estimate(SparseMat(3, 3)) == 0.0);
  CHECK(operator_norm_estimate(SparseMat()) == 0.0);
}

TEST_CASE("norm estimate agrees with a dense decomposition oracle") {
  // deterministic dense-ish 20x20 Gaussian-rational matrix
  SparseMat a(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      GQ v(Q((i * 7 + j * 3) % 5 - 2), Q((i + 2 * j) % 3 - 1, 2));
      if (!v.is_zero()) a.set(i, j, v);
    }
  auto [top, bottom] = svd_extremes(a);
  CHECK(operator_norm_estimate(a) == doctest::Approx(top).epsilon(1e-6));
  CHECK(min_singular_value(a) == doctest::Approx(bottom).epsilon(1e-6));

  for (const char* name : {"circle_6", "boundary_simplex_2"}) {
    CAPTURE(name);
    PoincareComplex pc = make_poincare(corpus_complex(name));
    const SparseMat m = bs_operator(pc, +1).mat();
    CHECK(operator_norm_estimate(m) ==
          doctest::Approx(svd_extremes(m).first).epsilon(1e-6));
  }
}

TEST_CASE("smallest singular values on both branches") {
  CHECK(min_singular_value(diag_mat({GQ(3), GQ(1), GQ(Q(1, 4))})) ==
        doctest::Approx(0.25).epsilon(1e-9));

  SparseMat rank1(2, 2);  // [[1,2],[2,4]]
  rank1.set(0, 0, GQ(1));
  rank1.set(0, 1, GQ(2));
  rank1.set(1, 0, GQ(2));
  rank1.set(1, 1, GQ(4));
  CHECK(min_singular_value(rank1) <= 1e-12);

  SparseMat col(2, 1);  // lone unit column
  col.set(0, 0, GQ(1));
  CHECK(min_singular_value(col) == doctest::Approx(1.0).epsilon(1e-9));

  // dense branch vs forced-sparse branch on the same operator
  PoincareComplex pc = make_poincare(corpus_complex("circle_6"));
  const SparseMat m = bs_operator(pc, +1).mat();
  const double dense = min_singular_value(m);
  const double sparse = min_singular_value(m, 1e-9, /*dense_cutoff=*/1);
  CHECK(dense > 0.0);
  CHECK(sparse == doctest::Approx(dense).epsilon(1e-6));
  // and the adjoint has the same singular values
  CHECK(min_singular_value(m.conj_transpose()) ==
        doctest::Approx(dense).epsilon(1e-6));
}

TEST_CASE("estimates are bitwise deterministic") {
  PoincareComplex pc = make_poincare(corpus_complex("boundary_simplex_2"));
  const SparseMat m = bs_operator(pc, -1).mat();
  CHECK(operator_norm_estimate(m) == operator_norm_estimate(m));
  CHECK(min_singular_value(m) == min_singular_value(m));
  CHECK(min_singular_value(m, 1e-9, 1) == min_singular_value(m, 1e-9, 1));
}
