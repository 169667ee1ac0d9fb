// Synthesis of chain homotopies by exact linear solves.  Verification of a
// given witness is cheap (verify_homotopy); this module answers the harder
// question of producing one when only the two maps are known.

#include "siglab/homotopy.hpp"

namespace siglab {

namespace {

// Nonzero block of a graded operator at source degree p, or nullptr.
const SparseMat* block_at(const GradedOperator& g, int p) {
  return g.has_block(p) ? &g.block(p) : nullptr;
}

}  // namespace

GradedOperator solve_homotopy(const ChainComplex& src, const ChainComplex& dst,
                              const GradedOperator& f, int shift) {
  const ControlledModule& ms = *src.module;
  const ControlledModule& md = *dst.module;
  for (auto& [p, blk] : f.blocks()) {
    if (blk.first != p + shift)
      throw Error(ErrorKind::GradingMismatch,
                  "solve_homotopy: f is not homogeneous of shift " +
                      std::to_string(shift));
  }

  // Unknowns: entries of h_p : src_p -> dst_{p+shift+1}.
  std::map<int, long> h_base;
  long n_unknowns = 0;
  for (int p : ms.degrees()) {
    if (ms.rank(p) > 0 && md.rank(p + shift + 1) > 0) {
      h_base[p] = n_unknowns;
      n_unknowns += (long)ms.rank(p) * md.rank(p + shift + 1);
    }
  }
  auto h_index = [&](int p, int i, int j) {
    return h_base.at(p) + (long)i * ms.rank(p) + j;
  };

  // Equations: one per entry of each block f_p : src_p -> dst_{p+shift}.
  std::map<int, long> eq_base;
  long n_eqs = 0;
  for (int p : ms.degrees()) {
    if (ms.rank(p) > 0 && md.rank(p + shift) > 0) {
      eq_base[p] = n_eqs;
      n_eqs += (long)ms.rank(p) * md.rank(p + shift);
    }
  }

  if (n_eqs * n_unknowns > 40'000'000)
    throw Error(ErrorKind::ResourceLimit,
                "solve_homotopy: dense system of " + std::to_string(n_eqs) +
                    " x " + std::to_string(n_unknowns) + " exceeds the cap");
  DenseMat a((int)n_eqs, (int)n_unknowns);
  std::vector<GQ> rhs((size_t)n_eqs);
  for (auto& [p, base] : eq_base) {
    auto eq = [&, p = p, base = base](int ai, int j) {
      return base + (long)ai * ms.rank(p) + j;
    };
    if (const SparseMat* fp = block_at(f, p)) {
      fp->for_each([&](int ai, int j, const GQ& v) { rhs[eq(ai, j)] = v; });
    }
    // d_dst o h_p : coefficient d_dst[a, i] on unknown h_p[i, j].
    if (h_base.count(p) && dst.d.has_block(p + shift + 1)) {
      const SparseMat& dd = dst.d.block(p + shift + 1);
      dd.for_each([&](int ai, int i, const GQ& v) {
        for (int j = 0; j < ms.rank(p); ++j)
          a.at((int)eq(ai, j), (int)h_index(p, i, j)) = v;
      });
    }
    // h_{p-1} o d_src : coefficient d_src[m, j] on unknown h_{p-1}[a, m].
    if (h_base.count(p - 1) && src.d.has_block(p)) {
      const SparseMat& ds = src.d.block(p);
      ds.for_each([&](int m, int j, const GQ& v) {
        for (int ai = 0; ai < md.rank(p + shift); ++ai) {
          GQ& slot = a.at((int)eq(ai, j), (int)h_index(p - 1, ai, m));
          slot = slot + v;
        }
      });
    }
  }

  std::vector<GQ> x;
  if (!solve_exact(a, rhs, x))
    throw Error(ErrorKind::NotEquivalence,
                "solve_homotopy: the maps are not chain homotopic");

  GradedOperator h(src.module, dst.module);
  for (auto& [p, base] : h_base) {
    for (int i = 0; i < md.rank(p + shift + 1); ++i)
      for (int j = 0; j < ms.rank(p); ++j) {
        const GQ& v = x[(size_t)h_index(p, i, j)];
        if (!v.is_zero()) h.add_entry(p, p + shift + 1, i, j, v);
      }
  }
  return h;
}

}  // namespace siglab
