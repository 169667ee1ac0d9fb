// Standard midpoint subdivision: fragment enumeration, cell counts, mesh
// decay, bounded geometry, and the subdivision chain map.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siglab/chain.hpp"
#include "siglab/corpus.hpp"
#include "siglab/subdivision.hpp"

using namespace siglab;

namespace {

std::vector<int> f_vector(const TypedComplex& c) {
  std::vector<int> f;
  for (int p = 0; p <= c.dim(); ++p) f.push_back(c.simplex_count(p));
  return f;
}

}  // namespace

TEST_CASE("fragment enumeration counts") {
  // a k-simplex splits into 2^k top fragments
  for (int k = 1; k <= 5; ++k) {
    CHECK((int)simplex_fragments(k).size() == (1 << k));
    for (auto& f : simplex_fragments(k)) CHECK(std::abs(f.sign) == 1);
  }
  // all cells of the subdivided triangle, by dimension
  CHECK(simplex_fragments_dim(2, 0).size() == 6);
  CHECK(simplex_fragments_dim(2, 1).size() == 9);
  CHECK(simplex_fragments_dim(2, 2).size() == 4);
  // fragment volumes partition the simplex
  for (int k = 1; k <= 4; ++k) {
    Q total(0);
    for (auto& f : simplex_fragments(k)) total += f.volume;
    CHECK(total == Q(1));
    for (auto& f : simplex_fragments(k)) CHECK(f.volume == Q(1, 1 << k));
  }
}

TEST_CASE("subdivision cell counts match predictions") {
  for (const char* name : {"circle_6", "boundary_simplex_2",
                           "boundary_simplex_3", "cp2_9", "disk_2"}) {
    CAPTURE(name);
    auto c = corpus_complex(name);
    auto s = standard_subdivide(c);
    CHECK(predicted_subdivision_cells(c) == s.total_cells());
  }

  CHECK(f_vector(standard_subdivide(corpus_complex("circle_6"))) ==
        std::vector<int>{12, 12});
  CHECK(f_vector(standard_subdivide(corpus_complex("cp2_9"))) ==
        std::vector<int>{45, 414, 1236, 1440, 576});
  // subdivided triangle: 6 vertices, 9 edges, 4 triangles
  CHECK(f_vector(standard_subdivide(corpus_complex("disk_2"))) ==
        std::vector<int>{6, 9, 4});

  // iterates: edges double, triangles quadruple per level
  auto circles = iterate_subdivide(corpus_complex("circle_6"), 3);
  CHECK(circles.back().simplex_count(1) == 48);
  auto spheres = iterate_subdivide(corpus_complex("boundary_simplex_2"), 4);
  CHECK(spheres.back().simplex_count(2) == 1024);
}

TEST_CASE("subdivided complexes remain valid closed complexes") {
  for (const char* name :
       {"circle_6", "boundary_simplex_2", "boundary_simplex_3", "cp2_9",
        "product(circle_4,circle_4)"}) {
    CAPTURE(name);
    auto s = standard_subdivide(corpus_complex(name));
    CHECK_NOTHROW(s.validate(true));
    CHECK_NOTHROW(s.chains().verify());
    CHECK_NOTHROW(s.verify_fundamental_cycle());
  }
  // non-closed input stays valid as a non-closed complex
  auto d = standard_subdivide(corpus_complex("disk_2"));
  CHECK_NOTHROW(d.validate(false));
}

TEST_CASE("midpoint vertices carry the type gap") {
  auto c = corpus_complex("boundary_simplex_2");  // types 0..3
  auto s = standard_subdivide(c);
  // original vertices keep their ids at type 0
  for (auto& v : c.vertices()) {
    int idx = s.vertex_index(v.id);
    REQUIRE(idx >= 0);
    CHECK(s.vertices()[idx].type == 0);
  }
  // the midpoint of two originals is named for the pair and typed by the gap
  int m01 = s.vertex_index("(v0+v1)");
  int m03 = s.vertex_index("(v0+v3)");
  REQUIRE(m01 >= 0);
  REQUIRE(m03 >= 0);
  CHECK(s.vertices()[m01].type == 1);
  CHECK(s.vertices()[m03].type == 3);
  // coordinates are exact midpoints
  auto& a = c.vertices()[c.vertex_index("v0")].coords;
  auto& b = c.vertices()[c.vertex_index("v1")].coords;
  for (size_t k = 0; k < a.size(); ++k)
    CHECK(s.vertices()[m01].coords[k] == (a[k] + b[k]) / 2);
}

TEST_CASE("mesh decay and bounded geometry across levels") {
  auto circles = iterate_subdivide(corpus_complex("circle_6"), 3);
  CHECK(circles[0].mesh2() == Q(1, 4));
  CHECK(circles[1].mesh2() == Q(1, 16));
  CHECK(circles[2].mesh2() == Q(1, 64));
  for (auto& c : circles) CHECK(c.max_vertex_degree() == 2);

  auto spheres = iterate_subdivide(corpus_complex("boundary_simplex_2"), 3);
  CHECK(spheres[0].mesh2() == Q(3, 2));
  CHECK(spheres[1].mesh2() == Q(3, 8));
  CHECK(spheres[2].mesh2() == Q(3, 32));
  // vertex degree stabilizes: uniform bounded geometry
  CHECK(spheres[0].max_vertex_degree() == 16);
  CHECK(spheres[1].max_vertex_degree() == 16);
  CHECK(spheres[2].max_vertex_degree() == 16);

  // mesh is monotone nonincreasing with a contraction factor below one:
  // every observed squared ratio is at most 3/4
  Q prev = corpus_complex("boundary_simplex_2").mesh2();
  for (auto& s : spheres) {
    CHECK(s.mesh2() < prev);
    CHECK(s.mesh2() * 4 <= prev * 3);
    prev = s.mesh2();
  }
}

TEST_CASE("subdivision chain map commutes with the boundary") {
  for (const char* name :
       {"circle_6", "boundary_simplex_2", "boundary_simplex_3", "cp2_9"}) {
    CAPTURE(name);
    auto parent = corpus_complex(name);
    auto child = standard_subdivide(parent);
    auto pc = parent.chains();
    auto cc = child.chains();
    GradedOperator A = subdivision_chain_map(parent, pc.module, child,
                                             cc.module);
    CHECK(chain_map_defect(pc, cc, A) == std::nullopt);
    // fundamental cycle maps to fundamental cycle, exactly
    Chain mu = parent.fundamental_cycle(pc.module);
    Chain img = apply(A, mu);
    CHECK((img - child.fundamental_cycle(cc.module)).is_zero());
  }
}

TEST_CASE("subdivision chain map is a quasi-isomorphism") {
  for (const char* name : {"circle_6", "boundary_simplex_2"}) {
    CAPTURE(name);
    auto parent = corpus_complex(name);
    auto child = standard_subdivide(parent);
    auto pc = parent.chains();
    auto cc = child.chains();
    GradedOperator A = subdivision_chain_map(parent, pc.module, child,
                                             cc.module);
    auto cone = mapping_cone(pc, cc, A);
    CHECK(is_acyclic(cone.cone));
  }
}

TEST_CASE("iterated chain maps compose") {
  auto levels = iterate_subdivide(corpus_complex("circle_6"), 2);
  auto c0 = corpus_complex("circle_6");
  auto ch0 = c0.chains();
  auto ch1 = levels[0].chains();
  auto ch2 = levels[1].chains();
  GradedOperator a0 = subdivision_chain_map(c0, ch0.module, levels[0],
                                            ch1.module);
  GradedOperator a1 = subdivision_chain_map(levels[0], ch1.module, levels[1],
                                            ch2.module);
  GradedOperator a = a1.compose(a0);
  CHECK(chain_map_defect(ch0, ch2, a) == std::nullopt);
  Chain mu = c0.fundamental_cycle(ch0.module);
  CHECK((apply(a, mu) - levels[1].fundamental_cycle(ch2.module)).is_zero());
  // two levels of hexagon refinement: quarter edges
  CHECK(a.propagation2() > 0);
  CHECK(a1.propagation2() < a0.propagation2());
}

TEST_CASE("propagation of the chain map shrinks with the mesh") {
  auto parent = corpus_complex("circle_6");
  auto child = standard_subdivide(parent);
  auto A = subdivision_chain_map(parent, parent.chain_module(), child,
                                 child.chain_module());
  // parent edge barycenter to child edge barycenter: distance 1/4
  CHECK(A.propagation2() == Q(1, 16));
}

TEST_CASE("cell cap stops exponential growth") {
  CHECK_THROWS_AS(standard_subdivide(corpus_complex("cp2_9"), 100), Error);
  try {
    standard_subdivide(corpus_complex("cp2_9"), 100);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
    CHECK(e.exit_code() == 4);
  }
  CHECK_THROWS_AS(iterate_subdivide(corpus_complex("boundary_simplex_3"), 6,
                                    50000),
                  Error);
}
