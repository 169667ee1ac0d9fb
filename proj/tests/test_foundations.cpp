// Exact scalar arithmetic, sparse/dense matrices, the serial/parallel
// kernel pair, and graded operators.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siglab/chain.hpp"
#include "siglab/corpus.hpp"
#include "siglab/kernels.hpp"
#include "siglab/operators.hpp"
#include "siglab/scalar.hpp"
#include "siglab/sparse.hpp"

using namespace siglab;

TEST_CASE("gaussian rational arithmetic") {
  GQ z(Q(3, 4), Q(1, 2));
  CHECK(z * z.conj() == GQ(Q(13, 16)));
  CHECK(z.norm2() == Q(13, 16));
  CHECK(z * z.inv() == GQ(1));
  CHECK((z + (-z)).is_zero());
  CHECK(z / z == GQ(1));
  CHECK(z.str() == "3/4+1/2i");
  CHECK(GQ(Q(-2), Q(0)).str() == "-2");
  CHECK(GQ(Q(0), Q(-1)).str() == "-i");
}

TEST_CASE("powers of i and parity signs") {
  CHECK(i_pow(0) == GQ(1));
  CHECK(i_pow(1) == GQ::i());
  CHECK(i_pow(2) == GQ(-1));
  CHECK(i_pow(3) == -GQ::i());
  CHECK(i_pow(-1) == -GQ::i());
  CHECK(i_pow(7) * i_pow(-7) == GQ(1));
  CHECK(sign_pow(4) == 1);
  CHECK(sign_pow(-3) == -1);
}

TEST_CASE("exact square-root comparisons") {
  // sqrt(2) <= 1 + 1/2 but not <= 1 + 1/3
  CHECK(sqrt_leq_sum(Q(2), Q(1), Q(1, 4)));
  CHECK(!sqrt_leq_sum(Q(2), Q(1), Q(1, 9)));
  // equality case sqrt(4) <= 1 + 1
  CHECK(sqrt_leq_sum(Q(4), Q(1), Q(1)));
  CHECK(!sqrt_leq_sum(Q(4) + Q(1, 1000000), Q(1), Q(1)));
  // sqrt(8) <= 3*sqrt(1) but not <= 2*sqrt(1)
  CHECK(sqrt_leq_scaled(Q(8), 3, Q(1)));
  CHECK(!sqrt_leq_scaled(Q(8), 2, Q(1)));
}

TEST_CASE("sparse matrix algebra") {
  SparseMat a(2, 3);
  a.set(0, 0, GQ(1));
  a.set(0, 2, GQ(Q(0), Q(1)));
  a.set(1, 1, GQ(Q(-1, 2)));
  CHECK(a.nnz() == 3);
  CHECK(a.get(0, 2) == GQ::i());
  CHECK(a.get(1, 0) == GQ(0));

  // entry i at (r,c) becomes -i at (c,r)
  SparseMat at = a.conj_transpose();
  CHECK(at.get(2, 0) == -GQ::i());
  CHECK(at.conj_transpose() == a);

  a.add_at(0, 2, -GQ::i());
  CHECK(a.nnz() == 2);  // cancellation drops the slot

  SparseMat s = a + (-a);
  CHECK(s.is_zero());
}

TEST_CASE("dense inverse, determinant and exact solve") {
  DenseMat m(2, 2);
  m.at(0, 0) = GQ(2);
  m.at(0, 1) = GQ(Q(0), Q(1));
  m.at(1, 0) = GQ(Q(0), Q(-1));
  m.at(1, 1) = GQ(1);
  CHECK(m.det() == GQ(1));
  DenseMat inv = m.inverse();
  DenseMat prod = m.mul(inv);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(prod.at(i, j) == (i == j ? GQ(1) : GQ(0)));

  DenseMat sing(2, 2);
  sing.at(0, 0) = GQ(1);
  sing.at(0, 1) = GQ(2);
  sing.at(1, 0) = GQ(2);
  sing.at(1, 1) = GQ(4);
  CHECK(sing.det() == GQ(0));
  CHECK_THROWS_AS(sing.inverse(), Error);

  // consistent underdetermined system: free variables pinned to zero
  DenseMat a(2, 3);
  a.at(0, 0) = GQ(1);
  a.at(0, 2) = GQ(1);
  a.at(1, 1) = GQ(1);
  std::vector<GQ> b = {GQ(5), GQ(7)};
  std::vector<GQ> x;
  REQUIRE(solve_exact(a, b, x));
  CHECK(x[0] == GQ(5));
  CHECK(x[1] == GQ(7));
  CHECK(x[2] == GQ(0));

  // inconsistent system
  DenseMat c(2, 1);
  c.at(0, 0) = GQ(1);
  c.at(1, 0) = GQ(1);
  std::vector<GQ> rhs = {GQ(1), GQ(2)};
  CHECK(!solve_exact(c, rhs, x));
}

namespace {

// Deterministic sparse test matrix with mixed real/imaginary entries.
SparseMat make_matrix(int rows, int cols, unsigned seed) {
  SparseMat m(rows, cols);
  unsigned state = seed;
  auto next = [&state]() {
    state = state * 1664525u + 1013904223u;
    return state >> 8;
  };
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      unsigned r = next();
      if (r % 3 != 0) continue;  // ~1/3 fill
      Q re((long)(r % 13) - 6, (long)(r % 4) + 1);
      Q im((long)(r % 7) - 3, 2);
      m.set(i, j, GQ(re, im));
    }
  return m;
}

}  // namespace

TEST_CASE("sparse product kernels agree with each other and a dense oracle") {
  SparseMat a = make_matrix(23, 31, 11);
  SparseMat b = make_matrix(31, 17, 77);

  SparseMat ps = kernels::spmm_serial(a, b);
  SparseMat pp = kernels::spmm_parallel(a, b);
  CHECK(ps == pp);

  DenseMat oracle = DenseMat::from_sparse(a).mul(DenseMat::from_sparse(b));
  CHECK(ps == oracle.to_sparse());
}

TEST_CASE("float matvec kernels are bit-identical") {
  SparseMat a = make_matrix(40, 40, 5);
  kernels::FloatCSR csr = kernels::FloatCSR::from(a);
  std::vector<kernels::cd> x(40), y1(40), y2(40);
  for (int i = 0; i < 40; ++i) x[i] = {std::cos(0.1 * i), std::sin(0.2 * i)};
  kernels::spmv_serial(csr, x.data(), y1.data());
  kernels::spmv_parallel(csr, x.data(), y2.data());
  for (int i = 0; i < 40; ++i) {
    CHECK(y1[i].real() == y2[i].real());
    CHECK(y1[i].imag() == y2[i].imag());
  }
}

TEST_CASE("propagation kernels agree and match hand values") {
  // four basis elements on a line at x = 0, 1, 2, 3
  ControlSpace line({1});
  auto m = std::make_shared<ControlledModule>(line);
  for (int i = 0; i < 4; ++i)
    m->add("e" + std::to_string(i), 0, {Q(i)});

  SparseMat op(4, 4);
  op.set(0, 0, GQ(1));
  op.set(1, 3, GQ(Q(0), Q(2)));  // distance 2
  CHECK(kernels::propagation2_serial(op, *m, *m) == Q(4));
  CHECK(kernels::propagation2_parallel(op, *m, *m) == Q(4));

  SparseMat zero(4, 4);
  CHECK(kernels::propagation2(zero, *m, *m) == Q(0));

  std::vector<std::pair<int, int>> support = {{0, 1}, {2, 3}};
  CHECK(kernels::support_propagation2(support, *m, *m,
                                      kernels::Mode::serial) == Q(1));
}

TEST_CASE("graded operator algebra on the hexagon boundary") {
  auto c = corpus_complex("circle_6").chains();
  c.verify();

  // edge barycenter to endpoint distance is 1/2 on the unit hexagon
  CHECK(c.d.propagation2() == Q(1, 4));
  CHECK(c.d.propagation() == doctest::Approx(0.5));

  // adjoint is an involution and preserves propagation
  GradedOperator dstar = c.d.adjoint();
  CHECK(dstar.adjoint() == c.d);
  CHECK(dstar.propagation2() == c.d.propagation2());

  // d o d = 0; d - d = 0
  CHECK(c.d.compose(c.d).is_zero());
  CHECK((c.d - c.d).is_zero());

  // identity: propagation 0, fixes chains
  GradedOperator id = GradedOperator::identity(c.module);
  CHECK(id.propagation2() == Q(0));
  CHECK(id.compose(c.d) == c.d);
  CHECK(c.d.compose(id) == c.d);

  // degree-wise scaling with alternating signs is an involution
  auto flip = [](int p) { return GQ(sign_pow(p)); };
  CHECK(c.d.scaled_by_degree(flip).scaled_by_degree(flip) == c.d);

  // flatten and back: B = d + d* is Hermitian as a flat operator
  FlatOperator B = FlatOperator::from_graded(c.d) +
                   FlatOperator::from_graded(dstar);
  CHECK(B.is_hermitian());
  CHECK(B.propagation2() == Q(1, 4));
}

TEST_CASE("propagation is subadditive under composition and sum") {
  for (const char* name : {"circle_6", "boundary_simplex_2", "cp2_9"}) {
    CAPTURE(name);
    auto c = corpus_complex(name).chains();
    GradedOperator dstar = c.d.adjoint();
    GradedOperator lap = c.d.compose(dstar) + dstar.compose(c.d);
    // sqrt(prop2(d d* + d* d)) <= 2 sqrt(prop2(d)), exactly
    CHECK(sqrt_leq_sum(lap.propagation2(), c.d.propagation2(),
                       c.d.propagation2()));
    // sum bound: prop(a + b) <= max(prop a, prop b)
    GradedOperator sum = c.d + c.d;
    CHECK(sum.propagation2() <= c.d.propagation2());
  }
}

TEST_CASE("grading mismatch is rejected") {
  ControlSpace pt({1});
  auto m = std::make_shared<ControlledModule>(pt);
  m->add("a", 0, {Q(0)});
  m->add("b", 1, {Q(0)});
  m->add("c", 2, {Q(0)});
  ModulePtr mp = m;

  // two blocks from degree 1 to different target degrees
  GradedOperator f(mp, mp);
  f.set_entry(1, 0, 0, 0, GQ(1));
  GradedOperator g(mp, mp);
  g.set_entry(1, 2, 0, 0, GQ(1));
  CHECK_THROWS_AS(f + g, Error);

  // adjoint of an operator whose grade map collapses degrees
  GradedOperator h(mp, mp);
  h.set_entry(1, 0, 0, 0, GQ(1));
  h.set_entry(2, 0, 0, 0, GQ(1));
  CHECK_THROWS_AS(h.adjoint(), Error);

  try {
    f + g;
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GradingMismatch);
    CHECK(e.exit_code() == 2);
  }
}
