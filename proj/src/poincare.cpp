// Duality operators and their axioms: cap product, symmetrization, the S
// and B operators, signatures, and Poincare pairs with their boundaries.
// Every axiom-level identity here is checked over the exact scalars; the
// only floats in sight are in reporting layers elsewhere.

#include "siglab/poincare.hpp"

#include <vector>

#include "siglab/corpus.hpp"

namespace siglab {

namespace {

// Centralized Koszul sign of the front-face/back-face cap splitting.  With
// every simplex ordered by ascending vertex type, the exact identity
//   T b* + (-1)^p b T = (cap product with the boundary of mu)
// holds with this sign identically +1; keeping the hook in one place makes
// the convention auditable.
GQ cap_sign(int /*n*/, int /*p*/) { return GQ(1); }

GQ sym_sign(int n, int p) { return GQ(sign_pow((long)(n - p) * p)); }

std::string entry_witness(const GradedOperator& g) {
  for (auto& [p, pr] : g.blocks()) {
    std::string out;
    pr.second.for_each([&](int i, int j, const GQ& v) {
      if (out.empty())
        out = "degree " + std::to_string(p) + ", entry (" + std::to_string(i) +
              ", " + std::to_string(j) + ") = " + v.str();
    });
    if (!out.empty()) return out;
  }
  return "zero";
}

}  // namespace

ChainComplex dual_complex(const ChainComplex& c, int n) {
  const ControlledModule& m = *c.module;
  auto dm = std::make_shared<ControlledModule>(m.space());
  if (m.rank() > 0) {
    for (int q = m.max_degree(); q >= m.min_degree(); --q)
      for (int g : m.degree_indices(q)) {
        const auto& e = m.elem(g);
        dm->add("d:" + e.id, n - q, e.loc);
      }
  }
  ModulePtr dmc = dm;
  GradedOperator dd(dmc, dmc);
  for (auto& [q, pr] : c.d.blocks())
    dd.block_mut(n - q + 1, n - q) = pr.second.conj_transpose();
  return {dmc, dd};
}

int duality_twist(int n, int p) {
  return sign_pow((long)p * (n + 1) + (long)p * (p + 1) / 2);
}

GradedOperator duality_chain_map(const ChainComplex& c, int n,
                                 const GradedOperator& t, ModulePtr dual) {
  GradedOperator phi(dual, c.module);
  for (auto& [q, pr] : t.blocks()) {
    if (pr.first != n - q)
      throw Error(ErrorKind::GradingMismatch,
                  "duality operator must map degree p to n-p");
    const int p = n - q;
    phi.block_mut(p, p) = duality_twist(n, p) == 1
                              ? pr.second
                              : pr.second.scaled(GQ(-1));
  }
  return phi;
}

bool duality_equivalence(const ChainComplex& c, int n,
                         const GradedOperator& t) {
  ChainComplex dual = dual_complex(c, n);
  GradedOperator phi = duality_chain_map(c, n, t, dual.module);
  if (chain_map_defect(dual, c, phi)) return false;
  return is_acyclic(mapping_cone(dual, c, phi).cone);
}

GradedOperator cap_duality(const TypedComplex& cx, ModulePtr module) {
  const int n = cx.dim();
  GradedOperator t(module, module);
  for (auto& [tidx, sign] : cx.top()) {
    const auto& verts = cx.simplices(n)[(size_t)tidx];
    for (int p = 0; p <= n; ++p) {
      std::vector<int> front(verts.begin(), verts.begin() + p + 1);
      std::vector<int> back(verts.begin() + p, verts.end());
      const int fi = cx.simplex_index(front);
      const int bi = cx.simplex_index(back);
      t.add_entry(p, n - p, bi, fi, cap_sign(n, p) * GQ(sign));
    }
  }
  return t;
}

GradedOperator symmetrize(const GradedOperator& t_raw, int n) {
  GradedOperator flip = t_raw.adjoint().scaled_by_degree(
      [n](int p) { return sym_sign(n, p); });
  return (t_raw + flip).scaled(GQ(Q(1, 2)));
}

GradedOperator duality_chain_defect(const ChainComplex& c,
                                    const GradedOperator& t) {
  GradedOperator tb = t.compose(c.d.adjoint());
  GradedOperator bt = c.d.compose(t).scaled_by_degree(
      [](int p) { return GQ(sign_pow(p)); });
  return tb + bt;
}

GradedOperator symmetry_defect(const GradedOperator& t, int n) {
  return t.adjoint() -
         t.scaled_by_degree([n](int p) { return sym_sign(n, p); });
}

PoincareComplex assemble_poincare(const ChainComplex& c, int n,
                                  const GradedOperator& t_raw,
                                  bool check_equivalence) {
  c.verify();
  GradedOperator t = symmetrize(t_raw, n);
  GradedOperator d1 = symmetry_defect(t, n);
  if (!d1.is_zero())
    throw Error(ErrorKind::DualityFailure,
                "symmetry axiom fails at " + entry_witness(d1));
  GradedOperator d2 = duality_chain_defect(c, t);
  if (!d2.is_zero())
    throw Error(ErrorKind::DualityFailure,
                "chain condition fails at " + entry_witness(d2));
  if (check_equivalence && !duality_equivalence(c, n, t))
    throw Error(ErrorKind::SymmetrizationDegenerate,
                "symmetrized duality operator is not a chain equivalence");
  return {c, t, n};
}

PoincareComplex make_poincare(const TypedComplex& cx, bool check_equivalence) {
  cx.validate(true);
  cx.verify_fundamental_cycle();
  ChainComplex c = cx.chains();
  return assemble_poincare(c, cx.dim(), cap_duality(cx, c.module),
                           check_equivalence);
}

GradedOperator s_operator(const PoincareComplex& pc) {
  const long l = pc.n / 2;
  return pc.t.scaled_by_degree(
      [l](int p) { return i_pow((long)p * (p - 1) + l); });
}

FlatOperator b_operator(const ChainComplex& c) {
  auto b = FlatOperator::from_graded(c.d);
  return b + b.adjoint();
}

FlatOperator bs_operator(const PoincareComplex& pc, int sign) {
  auto s = FlatOperator::from_graded(s_operator(pc));
  return sign > 0 ? b_operator(pc.c) + s : b_operator(pc.c) - s;
}

HpReport verify_hp_axioms(const PoincareComplex& pc) {
  HpReport r;
  auto note = [&](const std::string& w) {
    if (r.witness.empty()) r.witness = w;
  };
  try {
    pc.c.verify();
    for (auto& [p, pr] : pc.t.blocks())
      if (pr.first != pc.n - p)
        throw Error(ErrorKind::GradingMismatch,
                    "duality operator must map degree p to n-p");
    r.graded = true;
  } catch (const Error& e) {
    note(e.what());
    return r;
  }
  GradedOperator d1 = symmetry_defect(pc.t, pc.n);
  r.symmetry = d1.is_zero();
  if (!r.symmetry) note("symmetry defect at " + entry_witness(d1));
  GradedOperator d2 = duality_chain_defect(pc.c, pc.t);
  r.chain_condition = d2.is_zero();
  if (!r.chain_condition) note("chain defect at " + entry_witness(d2));
  r.equivalence = duality_equivalence(pc.c, pc.n, pc.t);
  if (!r.equivalence) note("duality cone is not acyclic");
  if (r.symmetry) {
    Inertia ip = hermitian_inertia(bs_operator(pc, +1).mat());
    Inertia im = hermitian_inertia(bs_operator(pc, -1).mat());
    r.det_plus = ip.det;
    r.det_minus = im.det;
    r.bs_invertible = ip.zero == 0 && im.zero == 0;
    if (!r.bs_invertible) note("B +- S is degenerate");
  } else {
    note("B +- S skipped: S is not self-adjoint");
  }
  return r;
}

int signature_even(const PoincareComplex& pc) {
  if (pc.n % 2 != 0)
    throw Error(ErrorKind::BadInput,
                "signature_even requires an even-dimensional complex");
  // With the parity grading g = (-1)^p one has g B g = -B and, for even n,
  // g S g = S, so B + S is congruent to S - B.  One exact inertia therefore
  // determines both sign counts: pos(B+S) = neg(B-S) and vice versa.
  Inertia im = hermitian_inertia(bs_operator(pc, -1).mat());
  if (im.zero > 0)
    throw Error(ErrorKind::NotInvertible, "B +- S has a kernel");
  return im.neg - im.pos;
}

Submodule split_module(
    ModulePtr m,
    const std::function<bool(const ControlledModule::Elem&)>& keep) {
  auto sub = std::make_shared<ControlledModule>(m->space());
  std::vector<std::pair<int, int>> kept;  // (full global, sub global)
  for (int g = 0; g < m->rank(); ++g) {
    const auto& e = m->elem(g);
    if (keep(e)) kept.emplace_back(g, sub->add(e.id, e.degree, e.loc));
  }
  ModulePtr subc = sub;
  GradedOperator incl(subc, m);
  for (auto& [g, sg] : kept) {
    const auto& e = m->elem(g);
    incl.add_entry(e.degree, e.degree, m->local_index(g),
                   subc->local_index(sg), GQ(1));
  }
  return {subc, incl, incl.adjoint()};
}

FlatOperator parity_restrict(const FlatOperator& w, int parity) {
  if (w.src() != w.dst())
    throw Error(ErrorKind::BadInput,
                "parity_restrict expects an endomorphism");
  const ControlledModule& m = *w.src();
  bool leak = false;
  w.mat().for_each([&](int i, int j, const GQ&) {
    if (((m.elem(i).degree - m.elem(j).degree) % 2 + 2) % 2 != 0) leak = true;
  });
  if (leak)
    throw Error(ErrorKind::CertificateFailure,
                "operator mixes degree parities");
  auto sub = split_module(w.src(), [parity](const ControlledModule::Elem& e) {
    return ((e.degree % 2) + 2) % 2 == parity;
  });
  SparseMat cut = kernels::spmm(
      sub.proj.flatten(), kernels::spmm(w.mat(), sub.incl.flatten()));
  return {sub.module, sub.module, std::move(cut)};
}

FlatOperator signature_odd_element(const PoincareComplex& pc) {
  if (pc.n % 2 == 0)
    throw Error(ErrorKind::BadInput,
                "signature_odd_element requires an odd-dimensional complex");
  FlatOperator bp = bs_operator(pc, +1);
  FlatOperator bm = bs_operator(pc, -1);
  DenseMat inv = DenseMat::from_sparse(bm.mat()).inverse();
  SparseMat w = kernels::spmm(bp.mat(), inv.to_sparse());
  return parity_restrict({pc.c.module, pc.c.module, std::move(w)}, 0);
}

PairReport verify_pair_axioms(const PoincarePair& pp) {
  PairReport r;
  const int m = pp.m;
  auto note = [&](const std::string& w) {
    if (r.witness.empty()) r.witness = w;
  };
  try {
    pp.c.verify();
    for (auto& [p, pr] : pp.t.blocks())
      if (pr.first != m - p)
        throw Error(ErrorKind::GradingMismatch,
                    "pair duality must map degree p to m-p");
    for (auto& [p, pr] : pp.p.blocks())
      if (pr.first != p)
        throw Error(ErrorKind::GradingMismatch,
                    "pair projection must preserve degree");
    r.graded = true;
  } catch (const Error& e) {
    note(e.what());
    return r;
  }

  r.projection = true;
  for (auto& [p, pr] : pp.p.blocks())
    pr.second.for_each([&](int i, int j, const GQ& v) {
      if (i != j || !(v == GQ(1))) r.projection = false;
    });
  if (!r.projection) note("P is not a diagonal 0/1 projection");

  GradedOperator bp = pp.c.d.compose(pp.p);
  GradedOperator dc = pp.p.compose(bp) - bp;
  r.compatible = dc.is_zero();
  if (!r.compatible) note("P b P - b P nonzero at " + entry_witness(dc));

  GradedOperator t0 = duality_chain_defect(pp.c, pp.t);
  GradedOperator dr = pp.p.compose(t0) - t0;
  r.boundary_range = dr.is_zero();
  if (!r.boundary_range)
    note("T b* + (-1)^p b T leaves range(P) at " + entry_witness(dr));

  GradedOperator d1 = symmetry_defect(pp.t, m);
  r.symmetry = d1.is_zero();
  if (!r.symmetry) note("pair symmetry defect at " + entry_witness(d1));

  if (r.projection && r.compatible) {
    std::vector<char> in_p((size_t)pp.c.module->rank(), 0);
    for (auto& [p, pr] : pp.p.blocks())
      pr.second.for_each([&](int i, int, const GQ&) {
        in_p[(size_t)pp.c.module->global_index(p, i)] = 1;
      });
    auto perp =
        split_module(pp.c.module, [&](const ControlledModule::Elem& e) {
          return !in_p[(size_t)pp.c.module->index_of(e.id)];
        });
    ChainComplex rel{perp.module,
                     perp.proj.compose(pp.c.d).compose(perp.incl)};
    ChainComplex dual = dual_complex(pp.c, m);
    GradedOperator phi = perp.proj.compose(
        duality_chain_map(pp.c, m, pp.t, dual.module));
    r.rel_equivalence = !chain_map_defect(dual, rel, phi) &&
                        is_acyclic(mapping_cone(dual, rel, phi).cone);
    if (!r.rel_equivalence)
      note("complement duality is not an equivalence onto (P-perp E, P-perp b)");
  } else {
    note("complement equivalence skipped");
  }
  return r;
}

PoincareComplex pair_boundary(const PoincarePair& pp) {
  PairReport rep = verify_pair_axioms(pp);
  if (!rep.pass())
    throw Error(ErrorKind::PairAxiomFailure,
                "pair axioms fail: " + rep.witness);
  const int m = pp.m;
  GradedOperator t0 = duality_chain_defect(pp.c, pp.t);
  if (!(pp.p.compose(t0) == t0) || !(t0.compose(pp.p) == t0))
    throw Error(ErrorKind::PairAxiomFailure,
                "boundary duality does not restrict to PE");

  std::vector<char> in_p((size_t)pp.c.module->rank(), 0);
  for (auto& [p, pr] : pp.p.blocks())
    pr.second.for_each([&](int i, int, const GQ&) {
      in_p[(size_t)pp.c.module->global_index(p, i)] = 1;
    });
  auto sub = split_module(pp.c.module, [&](const ControlledModule::Elem& e) {
    return in_p[(size_t)pp.c.module->index_of(e.id)] != 0;
  });
  ChainComplex bc{sub.module, sub.proj.compose(pp.c.d).compose(sub.incl)};
  bc.verify();
  GradedOperator t0r = sub.proj.compose(t0).compose(sub.incl);

  GradedOperator d1 = symmetry_defect(t0r, m - 1);
  if (!d1.is_zero())
    throw Error(ErrorKind::PairAxiomFailure,
                "boundary symmetry fails at " + entry_witness(d1));
  GradedOperator d2 = duality_chain_defect(bc, t0r);
  if (!d2.is_zero())
    throw Error(ErrorKind::PairAxiomFailure,
                "boundary chain condition fails at " + entry_witness(d2));
  if (!duality_equivalence(bc, m - 1, t0r))
    throw Error(ErrorKind::PairAxiomFailure,
                "boundary duality is not a chain equivalence");
  return {bc, t0r, m - 1};
}

PoincarePair disk_pair(int n) {
  TypedComplex cx = corpus_pair_complex("disk_pair_" + std::to_string(n));
  cx.validate(false);
  ChainComplex c = cx.chains();
  GradedOperator t = symmetrize(cap_duality(cx, c.module), n);
  GradedOperator p(c.module, c.module);
  const std::string top_id = cx.simplex_id(n, cx.top()[0].first);
  for (int g = 0; g < c.module->rank(); ++g) {
    const auto& e = c.module->elem(g);
    if (e.id != top_id)
      p.add_entry(e.degree, e.degree, c.module->local_index(g),
                  c.module->local_index(g), GQ(1));
  }
  return {c, t, p, n};
}

}  // namespace siglab
