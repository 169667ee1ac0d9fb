#pragma once

#include <functional>

#include "siglab/complexes.hpp"
#include "siglab/inertia.hpp"

namespace siglab {

/// n-dimensional Hilbert-Poincare complex: a chain complex (E, b) together
/// with a duality operator T : E_p -> E_{n-p} satisfying, exactly,
///   (1) T* = (-1)^{(n-p)p} T,
///   (2) T b* + (-1)^p b T = 0,
///   (3) T induces a chain homotopy equivalence from the dual complex.
struct PoincareComplex {
  ChainComplex c;
  GradedOperator t;
  int n = 0;
};

/// Dual complex D_p = E_{n-p} with differential (b_{n-p+1})*; basis ids are
/// prefixed with "d:", locations are kept.
ChainComplex dual_complex(const ChainComplex& c, int n);

/// The sign (-1)^{p(n+1) + p(p+1)/2} making eps(p) T : D_p -> E_p a chain
/// map whenever T satisfies the chain condition (2).
int duality_twist(int n, int p);

/// The chain map D -> E induced by T, with the twist applied; `dual` must
/// be the module of dual_complex(c, n).
GradedOperator duality_chain_map(const ChainComplex& c, int n,
                                 const GradedOperator& t, ModulePtr dual);

/// True iff the twisted map is a chain map with acyclic mapping cone,
/// i.e. T is a chain equivalence from the dual complex.
bool duality_equivalence(const ChainComplex& c, int n,
                         const GradedOperator& t);

/// Cap product with the fundamental chain: the dual basis element of the
/// front p-face of each top simplex (vertices in ascending type order, as
/// everywhere) is sent to the matching signed back face.  Raw, i.e. not
/// yet symmetrized.  Works for pairs as well, where the fundamental chain
/// is not a cycle.
GradedOperator cap_duality(const TypedComplex& cx, ModulePtr module);

/// T = (T_raw + (-1)^{(n-p)p} T_raw*) / 2: restores the symmetry axiom (1)
/// exactly while preserving the chain condition (2).
GradedOperator symmetrize(const GradedOperator& t_raw, int n);

/// Defect T b* + (-1)^p b T of the chain condition; zero iff axiom (2).
/// For a pair this is the raw boundary duality T0.
GradedOperator duality_chain_defect(const ChainComplex& c,
                                    const GradedOperator& t);

/// Defect T* - (-1)^{(n-p)p} T of the symmetry axiom; zero iff axiom (1).
GradedOperator symmetry_defect(const GradedOperator& t, int n);

/// Symmetrizes t_raw over (c, n) and verifies all duality axioms exactly;
/// throws SymmetrizationDegenerate when the symmetrized operator fails to
/// be a chain equivalence, DualityFailure when axioms (1)/(2) fail.
/// check_equivalence = false skips the (expensive) acyclicity part of
/// axiom (3); the symmetry and chain-condition checks stay exact.
PoincareComplex assemble_poincare(const ChainComplex& c, int n,
                                  const GradedOperator& t_raw,
                                  bool check_equivalence = true);

/// Full pipeline for a closed oriented complex: validation, cap product,
/// symmetrization, axiom verification.  Throws NotClosed / NotACycle on
/// bad input, SymmetrizationDegenerate on a degenerate duality.
PoincareComplex make_poincare(const TypedComplex& cx,
                              bool check_equivalence = true);

/// S v = i^{p(p-1)+l} T v on degree p, with l = floor(n/2).
GradedOperator s_operator(const PoincareComplex& pc);

/// Flattened B = b + b* over the total module.
FlatOperator b_operator(const ChainComplex& c);

/// Flattened B + sign*S; sign is +1 or -1.
FlatOperator bs_operator(const PoincareComplex& pc, int sign);

/// Axiom report; witnesses locate the first failing entry.
struct HpReport {
  bool graded = false;           // d has degree -1 and d^2 = 0
  bool symmetry = false;         // axiom (1)
  bool chain_condition = false;  // axiom (2)
  bool equivalence = false;      // axiom (3): duality cone acyclic
  bool bs_invertible = false;    // det(B+S) != 0 and det(B-S) != 0
  Q det_plus = 0, det_minus = 0;
  std::string witness;
  bool pass() const {
    return graded && symmetry && chain_condition && equivalence &&
           bs_invertible;
  }
};

HpReport verify_hp_axioms(const PoincareComplex& pc);

/// Even-dimensional signature: n_+(B+S) - n_+(B-S), exact congruence
/// inertia.  Throws NotInvertible if either form is degenerate.
int signature_even(const PoincareComplex& pc);

/// Odd-dimensional signature element (B+S)(B-S)^{-1} restricted to the
/// even-degree part, exact entries; invertibility by exact determinant.
FlatOperator signature_odd_element(const PoincareComplex& pc);

/// Based submodule cut out by an element predicate, with the inclusion and
/// orthogonal projection as graded operators.
struct Submodule {
  ModulePtr module;
  GradedOperator incl;  // sub -> full
  GradedOperator proj;  // full -> sub, adjoint of incl
};

Submodule split_module(
    ModulePtr m, const std::function<bool(const ControlledModule::Elem&)>& keep);

/// Restriction of a flat operator to one degree parity (0 even, 1 odd);
/// throws CertificateFailure if the operator mixes parities.
FlatOperator parity_restrict(const FlatOperator& w, int parity);

// ---- Poincare pairs ---------------------------------------------------------

/// Complex-with-boundary: m-dimensional duality T : E_p -> E_{m-p} plus an
/// exact diagonal 0/1 projection P marking the boundary part, satisfying
///   (1) P b P = b P,
///   (2) range(T b* + (-1)^p b T) inside range(P),
///   (3) T* = (-1)^{(m-p)p} T,
///   (4) the complement part of T a chain equivalence from the dual of E
///       onto (P-perp E, P-perp b).
struct PoincarePair {
  ChainComplex c;
  GradedOperator t;
  GradedOperator p;
  int m = 0;
};

struct PairReport {
  bool graded = false;
  bool projection = false;       // P diagonal with 0/1 entries
  bool compatible = false;       // axiom (1)
  bool boundary_range = false;   // axiom (2)
  bool symmetry = false;         // axiom (3)
  bool rel_equivalence = false;  // axiom (4)
  std::string witness;
  bool pass() const {
    return graded && projection && compatible && boundary_range && symmetry &&
           rel_equivalence;
  }
};

PairReport verify_pair_axioms(const PoincarePair& pp);

/// Boundary of a pair: T0 = T b* + (-1)^p b T restricted to PE, giving the
/// (m-1)-dimensional complex (PE, Pb, T0).  Verifies the pair axioms and
/// all four properties of the boundary (symmetry, PT0 = T0 = T0P, chain
/// condition, equivalence) exactly; throws PairAxiomFailure.
PoincareComplex pair_boundary(const PoincarePair& pp);

/// The n-simplex as an n-dimensional pair: E = all faces of Delta^n, P the
/// projection onto the proper faces, T the symmetrized cap product with
/// the top cell.
PoincarePair disk_pair(int n);

}  // namespace siglab
