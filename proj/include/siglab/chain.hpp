#pragma once

#include <optional>

#include "siglab/operators.hpp"

namespace siglab {

/// Homogeneous element of a graded module, stored by per-degree local
/// indices.
struct Chain {
  ModulePtr module;
  int degree = 0;
  std::vector<GQ> coef;

  static Chain zero(ModulePtr m, int degree) {
    return {m, degree, std::vector<GQ>((size_t)m->rank(degree))};
  }
  bool is_zero() const {
    for (auto& c : coef)
      if (!c.is_zero()) return false;
    return true;
  }
  Chain operator-() const;
  Chain operator+(const Chain& o) const;
  Chain operator-(const Chain& o) const;
  Chain scaled(const GQ& c) const;
};

/// Apply a graded operator to a homogeneous chain.
Chain apply(const GradedOperator& f, const Chain& x);

/// Finitely generated complex of controlled modules; the differential has
/// degree -1.
struct ChainComplex {
  ModulePtr module;
  GradedOperator d;

  /// Checks grading (p -> p-1 blocks only) and d o d = 0 exactly.
  void verify() const;
};

/// Exact rank of a sparse matrix over the Gaussian rationals.
int sparse_rank(SparseMat m);

/// Exact homology ranks, degree by degree.
std::map<int, int> homology_ranks(const ChainComplex& c);

bool is_acyclic(const ChainComplex& c);

/// Checks that f : C -> D commutes with the differentials (degree-0
/// blocks).  Returns an explanatory string on failure.
std::optional<std::string> chain_map_defect(const ChainComplex& src,
                                            const ChainComplex& dst,
                                            const GradedOperator& f);

/// Mapping cone of a degree-0 chain map f : C -> D, with
/// Cone_p = C_p (+) D_{p+1} and differential [[d, 0], [f, -e]].
struct MappingCone {
  ChainComplex cone;
  // global-index maps from the parts into the cone module
  std::vector<int> from_src;  // C element -> cone element
  std::vector<int> from_dst;  // D element -> cone element
};

MappingCone mapping_cone(const ChainComplex& src, const ChainComplex& dst,
                         const GradedOperator& f);

/// Exact verification that f1 - f2 = d_dst o h + h o d_src.
bool verify_homotopy(const ChainComplex& src, const ChainComplex& dst,
                        const GradedOperator& f1, const GradedOperator& f2,
                        const GradedOperator& h);

/// Contraction of an exactly acyclic complex: s with d s + s d = 1,
/// built from the combinatorial Hodge decomposition (s = d* (dd*+d*d)^-1).
/// Exact; throws NotInvertible if the complex is not acyclic.
GradedOperator contraction(const ChainComplex& c);

/// Homotopy data extracted from a contraction of the cone of f: a
/// homotopy inverse g together with exact homotopies h_src (g f ~ 1) and
/// h_dst (f g ~ 1).  Throws NotEquivalence if the cone is not acyclic.
struct HomotopyEquivalence {
  GradedOperator g;
  GradedOperator h_src;  // d h + h d = g f - 1 on src
  GradedOperator h_dst;  // d h + h d = f g - 1 on dst
};

HomotopyEquivalence homotopy_inverse(const ChainComplex& src,
                                     const ChainComplex& dst,
                                     const GradedOperator& f);

}  // namespace siglab
