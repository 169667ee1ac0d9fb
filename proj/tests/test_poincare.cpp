// Duality layer: dual complexes, cap product, the three duality axioms,
// exact Hermitian inertia, even/odd signatures, pairs with boundary, and
// cross-checks against an independent cochain intersection-form oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <complex>
#include <string>

#include "intersection_form.hpp"
#include "siglab/corpus.hpp"
#include "siglab/inertia.hpp"
#include "siglab/poincare.hpp"
#include "siglab/subdivision.hpp"

using namespace siglab;

namespace {

// det(B+S) of cp2_9, numerator over 2^58.
const char* kCp2DetNum =
    "8806251299594221957223285027858914725334150112970874908171718931713053919"
    "8307087064677395368756713485642621840885252849";

Q cp2_det(int sign) {
  return Q((sign < 0 ? std::string("-") : std::string()) + kCp2DetNum +
           "/288230376151711744");
}

// Eigenvalue sign counts of a Hermitian matrix along the float route.
std::pair<int, int> float_sign_counts(const SparseMat& m) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
  m.for_each([&](int i, int j, const GQ& v) {
    a(i, j) = std::complex<double>(v.re.get_d(), v.im.get_d());
  });
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a,
                                                     Eigen::EigenvaluesOnly);
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > 1e-9)
      ++pos;
    else if (lam < -1e-9)
      ++neg;
  }
  return {pos, neg};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected a siglab::Error");
}

}  // namespace

TEST_CASE("exact inertia on frozen forms") {
  SparseMat d(3, 3);  // diag(1, -2, 3)
  d.set(0, 0, GQ(1));
  d.set(1, 1, GQ(-2));
  d.set(2, 2, GQ(3));
  Inertia i1 = hermitian_inertia(d);
  CHECK(i1.pos == 2);
  CHECK(i1.neg == 1);
  CHECK(i1.zero == 0);
  CHECK(i1.det == Q(-6));

  SparseMat h(2, 2);  // [[0, i], [-i, 0]], eigenvalues +-1
  h.set(0, 1, GQ(Q(0), Q(1)));
  h.set(1, 0, GQ(Q(0), Q(-1)));
  Inertia i2 = hermitian_inertia(h);
  CHECK(i2.pos == 1);
  CHECK(i2.neg == 1);
  CHECK(i2.det == Q(-1));

  SparseMat s(2, 2);  // [[1, 2], [2, 4]], rank one
  s.set(0, 0, GQ(1));
  s.set(0, 1, GQ(2));
  s.set(1, 0, GQ(2));
  s.set(1, 1, GQ(4));
  Inertia i3 = hermitian_inertia(s);
  CHECK(i3.pos == 1);
  CHECK(i3.neg == 0);
  CHECK(i3.zero == 1);
  CHECK(i3.det == Q(0));

  SparseMat bad(2, 2);  // not Hermitian
  bad.set(0, 1, GQ(1));
  CHECK(kind_of([&] { hermitian_inertia(bad); }) == ErrorKind::BadInput);
  SparseMat rect(2, 3);
  CHECK(kind_of([&] { hermitian_inertia(rect); }) == ErrorKind::BadInput);
}

TEST_CASE("inertia is oblivious to the kernel mode") {
  PoincareComplex pc = make_poincare(corpus_complex("circle_6"));
  const SparseMat m = bs_operator(pc, +1).mat();
  Inertia a = hermitian_inertia(m, kernels::Mode::serial);
  Inertia b = hermitian_inertia(m, kernels::Mode::parallel);
  CHECK(a.pos == b.pos);
  CHECK(a.neg == b.neg);
  CHECK(a.zero == b.zero);
  CHECK(a.det == b.det);
}

TEST_CASE("inertia signs agree with float eigenvalue counts") {
  for (const char* name : {"circle_3", "boundary_simplex_2", "cp2_9"}) {
    CAPTURE(name);
    PoincareComplex pc = make_poincare(corpus_complex(name));
    for (int sign : {+1, -1}) {
      const SparseMat m = bs_operator(pc, sign).mat();
      Inertia exact = hermitian_inertia(m);
      auto [pos, neg] = float_sign_counts(m);
      CHECK(exact.pos == pos);
      CHECK(exact.neg == neg);
      CHECK(exact.zero == m.rows() - pos - neg);
    }
  }
}

TEST_CASE("duality twist obeys its recurrence") {
  for (int n = 0; n <= 6; ++n) {
    CHECK(duality_twist(n, 0) == 1);
    for (int p = 1; p <= n; ++p)
      CHECK(duality_twist(n, p) ==
            sign_pow(n - p + 1) * duality_twist(n, p - 1));
  }
}

TEST_CASE("dual complex mirrors ranks and transposes the differential") {
  TypedComplex cx = corpus_complex("cp2_9");
  ChainComplex c = cx.chains();
  const int n = cx.dim();
  ChainComplex dual = dual_complex(c, n);
  dual.verify();
  for (int p = 0; p <= n; ++p)
    CHECK(dual.module->rank(p) == c.module->rank(n - p));
  for (int r = 1; r <= n; ++r)
    CHECK(dual.d.block(r) == c.d.block(n - r + 1).conj_transpose());
  CHECK(dual.module->elem(0).id.substr(0, 2) == "d:");
}

TEST_CASE("raw cap product already satisfies the chain condition") {
  for (const char* name : {"circle_3", "boundary_simplex_2", "cp2_9"}) {
    CAPTURE(name);
    TypedComplex cx = corpus_complex(name);
    ChainComplex c = cx.chains();
    GradedOperator raw = cap_duality(cx, c.module);
    CHECK(duality_chain_defect(c, raw).is_zero());
    // symmetrization then repairs axiom (1) without disturbing (2)
    GradedOperator t = symmetrize(raw, cx.dim());
    CHECK(symmetry_defect(t, cx.dim()).is_zero());
    CHECK(duality_chain_defect(c, t).is_zero());
  }
}

TEST_CASE("duality axioms hold across the corpus") {
  struct Frozen {
    const char* name;
    const char* det_plus;
    const char* det_minus;
  };
  const Frozen table[] = {
      {"point", "1", "-1"},
      {"circle_3", "-169/16", "-169/16"},
      {"circle_6", "8281/64", "8281/64"},
      {"boundary_simplex_1", "-169/16", "-169/16"},
      {"boundary_simplex_2", "-23409/4", "-23409/4"},
      {"boundary_simplex_3", "-2523888255625/256", "-2523888255625/256"},
      {"product(circle_3,circle_3)", "-162006311548900", "-162006311548900"},
  };
  for (const Frozen& f : table) {
    CAPTURE(f.name);
    PoincareComplex pc = make_poincare(corpus_complex(f.name));
    HpReport r = verify_hp_axioms(pc);
    CHECK(r.pass());
    CHECK(r.witness.empty());
    CHECK(r.det_plus == Q(f.det_plus));
    CHECK(r.det_minus == Q(f.det_minus));
  }

  // cp2_9 separately: its determinant is too large to inline above
  PoincareComplex pc = make_poincare(corpus_complex("cp2_9"));
  HpReport r = verify_hp_axioms(pc);
  CHECK(r.pass());
  CHECK(r.det_plus == cp2_det(-1));
  CHECK(r.det_minus == cp2_det(+1));

  // boundary_simplex_4 passes as well; determinant only checked nonzero
  HpReport r4 = verify_hp_axioms(make_poincare(corpus_complex(
      "boundary_simplex_4")));
  CHECK(r4.pass());
  CHECK(r4.det_plus != 0);
  CHECK(r4.det_minus != 0);
}

TEST_CASE("B plus-minus S is Hermitian") {
  PoincareComplex pc = make_poincare(corpus_complex("circle_6"));
  for (int sign : {+1, -1}) {
    const SparseMat m = bs_operator(pc, sign).mat();
    CHECK(m == m.conj_transpose());
  }
}

TEST_CASE("even signatures match the cochain intersection oracle") {
  struct Case {
    const char* name;
    int expected;
  };
  const Case table[] = {
      {"point", 1},
      {"boundary_simplex_2", 0},
      {"boundary_simplex_4", 0},
      {"boundary_simplex_6", 0},
      {"product(circle_3,circle_3)", 0},
      {"cp2_9", 1},
  };
  for (const Case& c : table) {
    CAPTURE(c.name);
    TypedComplex cx = corpus_complex(c.name);
    CHECK(intersection::cup_signature(cx) == c.expected);
    CHECK(signature_even(make_poincare(cx)) == c.expected);
  }
  CHECK(kind_of([] {
          signature_even(make_poincare(corpus_complex("circle_3")));
        }) == ErrorKind::BadInput);
}

TEST_CASE("odd signature element is exactly invertible") {
  for (const char* name :
       {"circle_3", "circle_6", "boundary_simplex_1", "boundary_simplex_3"}) {
    CAPTURE(name);
    PoincareComplex pc = make_poincare(corpus_complex(name));
    FlatOperator w = signature_odd_element(pc);
    CHECK(w.det() == GQ(-1));
  }
}

TEST_CASE("orientation reversal flips the signature") {
  for (const char* name : {"point", "cp2_9"}) {
    CAPTURE(name);
    TypedComplex cx = corpus_complex(name);
    PoincareComplex pc = make_poincare(cx);
    HpReport r = verify_hp_axioms(pc);

    TypedComplex rev = cx;
    rev.orient(-cx.top()[0].second);
    PoincareComplex qc = make_poincare(rev);
    HpReport s = verify_hp_axioms(qc);
    CHECK(s.pass());
    // T -> -T swaps B+S with B-S
    CHECK(s.det_plus == r.det_minus);
    CHECK(s.det_minus == r.det_plus);
    CHECK(signature_even(qc) == -signature_even(pc));
  }
}

TEST_CASE("subdivision preserves the even signature") {
  for (const char* name : {"point", "boundary_simplex_2",
                           "product(circle_3,circle_3)",
                           "boundary_simplex_4"}) {
    CAPTURE(name);
    TypedComplex cx = corpus_complex(name);
    const int base = signature_even(make_poincare(cx));
    const int sub = signature_even(make_poincare(standard_subdivide(cx)));
    CHECK(base == sub);
  }
}

TEST_CASE("disk pairs satisfy the pair axioms and bound spheres") {
  struct Frozen {
    const char* name;
    const char* det_plus;
    const char* det_minus;
    bool even_boundary;
  };
  const Frozen table[] = {
      {"disk_pair_1", "-1", "-1", true},
      {"disk_pair_2", "-169/16", "-169/16", false},
      {"disk_pair_3", "-23409/4", "-23409/4", true},
  };
  for (const Frozen& f : table) {
    CAPTURE(f.name);
    int m = f.name[10] - '0';
    PoincarePair pp = disk_pair(m);
    PairReport pr = verify_pair_axioms(pp);
    CHECK(pr.pass());
    CHECK(pr.witness.empty());

    PoincareComplex bd = pair_boundary(pp);
    CHECK(bd.n == m - 1);
    HpReport hr = verify_hp_axioms(bd);
    CHECK(hr.pass());
    CHECK(hr.det_plus == Q(f.det_plus));
    CHECK(hr.det_minus == Q(f.det_minus));
    if (f.even_boundary)
      CHECK(signature_even(bd) == 0);
    else
      CHECK(kind_of([&] { signature_even(bd); }) == ErrorKind::BadInput);
  }
}

TEST_CASE("degenerate and broken dualities are rejected") {
  TypedComplex cx = corpus_complex("circle_3");
  ChainComplex c = cx.chains();

  // the zero operator symmetrizes fine but is no equivalence
  CHECK(kind_of([&] {
          assemble_poincare(c, 1, GradedOperator::zero(c.module, c.module));
        }) == ErrorKind::SymmetrizationDegenerate);

  // multiplying T by i keeps the chain condition and the equivalence but
  // destroys the symmetry axiom
  PoincareComplex pc = make_poincare(cx);
  PoincareComplex bad{pc.c, pc.t.scaled(GQ(Q(0), Q(1))), pc.n};
  HpReport r = verify_hp_axioms(bad);
  CHECK(!r.pass());
  CHECK(r.graded);
  CHECK(!r.symmetry);
  CHECK(r.chain_condition);
  CHECK(r.equivalence);
  CHECK(!r.witness.empty());

  // scaling a single degree block breaks symmetry across the twin block
  PoincareComplex lop{
      pc.c, pc.t.scaled_by_degree([](int p) { return GQ(p == 0 ? 2 : 1); }),
      pc.n};
  HpReport r2 = verify_hp_axioms(lop);
  CHECK(!r2.pass());
  CHECK(!r2.symmetry);
  CHECK(!r2.witness.empty());

  // a complex with boundary has no fundamental cycle
  CHECK(kind_of([] { make_poincare(corpus_complex("disk_2")); }) ==
        ErrorKind::NotClosed);
}

TEST_CASE("parity restriction and module splitting") {
  PoincareComplex pc = make_poincare(corpus_complex("circle_6"));
  // B maps odd degrees to even ones: restriction must refuse
  CHECK(kind_of([&] { parity_restrict(b_operator(pc.c), 0); }) ==
        ErrorKind::CertificateFailure);
  // identity restricts to the identity on the even part
  FlatOperator ev = parity_restrict(FlatOperator::identity(pc.c.module), 0);
  CHECK(ev.mat().rows() == pc.c.module->rank(0));
  CHECK(ev.mat() == SparseMat::identity(pc.c.module->rank(0)));

  Submodule sub = split_module(pc.c.module, [](const ControlledModule::Elem& e) {
    return e.degree % 2 == 0;
  });
  CHECK(sub.module->rank() == pc.c.module->rank(0));
  CHECK((sub.proj.compose(sub.incl) - GradedOperator::identity(sub.module))
            .is_zero());
}
