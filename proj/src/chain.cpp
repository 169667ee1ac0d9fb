#include "siglab/chain.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace siglab {

Chain Chain::operator-() const {
  Chain r = *this;
  for (auto& c : r.coef) c = -c;
  return r;
}

Chain Chain::operator+(const Chain& o) const {
  assert(module == o.module && degree == o.degree);
  Chain r = *this;
  for (size_t k = 0; k < coef.size(); ++k) r.coef[k] += o.coef[k];
  return r;
}

Chain Chain::operator-(const Chain& o) const { return *this + (-o); }

Chain Chain::scaled(const GQ& c) const {
  Chain r = *this;
  for (auto& x : r.coef) x *= c;
  return r;
}

Chain apply(const GradedOperator& f, const Chain& x) {
  if (f.src() != x.module)
    throw Error(ErrorKind::GradingMismatch, "chain not in operator domain");
  if (!f.has_block(x.degree)) {
    // zero block: land in degree determined by nothing; treat as empty
    throw Error(ErrorKind::GradingMismatch,
                "operator has no block at chain degree");
  }
  int q = f.target_degree(x.degree);
  Chain y = Chain::zero(f.dst(), q);
  const SparseMat& m = f.block(x.degree);
  for (int i = 0; i < m.rows(); ++i)
    for (auto& [j, v] : m.row(i)) y.coef[i] += v * x.coef[j];
  return y;
}

void ChainComplex::verify() const {
  for (auto& [p, b] : d.blocks()) {
    if (b.first != p - 1)
      throw Error(ErrorKind::NotClosed,
                  "differential block at degree " + std::to_string(p) +
                      " does not lower degree by one");
  }
  GradedOperator dd = d.compose(d);
  if (!dd.is_zero())
    throw Error(ErrorKind::NotClosed, "d o d != 0");
}

int sparse_rank(SparseMat m) {
  // row-major elimination with (column-count, row-count) pivoting
  int R = m.rows(), C = m.cols();
  std::vector<std::map<int, GQ>> row(R);
  std::vector<std::set<int>> col_rows(C);
  for (int i = 0; i < R; ++i)
    for (auto& [j, v] : m.row(i)) {
      row[i][j] = v;
      col_rows[j].insert(i);
    }
  std::vector<char> row_done(R, 0);
  int rank = 0;
  while (true) {
    // pick the lightest nonempty column, then the lightest row in it
    int bc = -1;
    size_t bc_sz = SIZE_MAX;
    for (int j = 0; j < C; ++j) {
      size_t s = col_rows[j].size();
      if (s > 0 && s < bc_sz) {
        bc_sz = s;
        bc = j;
        if (s == 1) break;
      }
    }
    if (bc < 0) break;
    int br = -1;
    size_t br_sz = SIZE_MAX;
    for (int i : col_rows[bc])
      if (row[i].size() < br_sz) {
        br_sz = row[i].size();
        br = i;
      }
    ++rank;
    // eliminate column bc using row br
    GQ pivinv = row[br][bc].inv();
    std::vector<int> users(col_rows[bc].begin(), col_rows[bc].end());
    for (int i : users) {
      if (i == br) continue;
      GQ f = row[i][bc] * pivinv;
      for (auto& [j, v] : row[br]) {
        auto it = row[i].find(j);
        if (it == row[i].end()) {
          GQ nv = -(f * v);
          if (!nv.is_zero()) {
            row[i][j] = std::move(nv);
            col_rows[j].insert(i);
          }
        } else {
          it->second -= f * v;
          if (it->second.is_zero()) {
            row[i].erase(it);
            col_rows[j].erase(i);
          }
        }
      }
    }
    // retire the pivot row and column
    for (auto& [j, v] : row[br]) col_rows[j].erase(br);
    row[br].clear();
    row_done[br] = 1;
  }
  return rank;
}

std::map<int, int> homology_ranks(const ChainComplex& c) {
  std::map<int, int> d_rank;
  for (auto& [p, b] : c.d.blocks()) d_rank[p] = sparse_rank(b.second);
  std::map<int, int> h;
  for (int p : c.module->degrees()) {
    int rp = c.module->rank(p);
    int rd = d_rank.count(p) ? d_rank[p] : 0;
    int rd1 = d_rank.count(p + 1) ? d_rank[p + 1] : 0;
    h[p] = rp - rd - rd1;
  }
  return h;
}

bool is_acyclic(const ChainComplex& c) {
  for (auto& [p, r] : homology_ranks(c))
    if (r != 0) return false;
  return true;
}

std::optional<std::string> chain_map_defect(const ChainComplex& src,
                                            const ChainComplex& dst,
                                            const GradedOperator& f) {
  for (auto& [p, b] : f.blocks())
    if (b.first != p)
      return "map is not degree 0 at degree " + std::to_string(p);
  GradedOperator lhs = f.compose(src.d);
  GradedOperator rhs = dst.d.compose(f);
  if (!(lhs == rhs)) return std::string("f d != d f");
  return std::nullopt;
}

MappingCone mapping_cone(const ChainComplex& src, const ChainComplex& dst,
                         const GradedOperator& f) {
  if (auto defect = chain_map_defect(src, dst, f))
    throw Error(ErrorKind::NotChainMap, *defect);
  auto module =
      ControlledModule::direct_sum(*src.module, *dst.module, "a:", "b:", -1);
  MappingCone mc;
  mc.from_src.resize(src.module->rank());
  for (int g = 0; g < src.module->rank(); ++g)
    mc.from_src[g] = module->index_of("a:" + src.module->elem(g).id);
  mc.from_dst.resize(dst.module->rank());
  for (int g = 0; g < dst.module->rank(); ++g)
    mc.from_dst[g] = module->index_of("b:" + dst.module->elem(g).id);

  GradedOperator dcone(module, module);
  auto copy_block = [&](const SparseMat& blk, int cone_src_deg,
                        int cone_dst_deg, int row_off, int col_off,
                        bool negate) {
    blk.for_each([&](int i, int j, const GQ& v) {
      dcone.add_entry(cone_src_deg, cone_dst_deg, i + row_off, j + col_off,
                      negate ? -v : v);
    });
  };
  // within cone degree p, locals order C_p elements before D_{p+1}
  for (int p = module->min_degree(); p <= module->max_degree() + 1; ++p) {
    int rq = src.module->rank(p);       // C_p
    int rq1 = src.module->rank(p - 1);  // C_{p-1}
    if (src.d.has_block(p)) copy_block(src.d.block(p), p, p - 1, 0, 0, false);
    if (f.has_block(p)) copy_block(f.block(p), p, p - 1, rq1, 0, false);
    if (dst.d.has_block(p + 1))
      copy_block(dst.d.block(p + 1), p, p - 1, rq1, rq, true);
  }
  mc.cone = ChainComplex{module, dcone};
  mc.cone.verify();
  return mc;
}

bool verify_homotopy(const ChainComplex& src, const ChainComplex& dst,
                        const GradedOperator& f1, const GradedOperator& f2,
                        const GradedOperator& h) {
  GradedOperator lhs = f1 - f2;
  GradedOperator rhs = dst.d.compose(h) + h.compose(src.d);
  return lhs == rhs;
}

GradedOperator contraction(const ChainComplex& c) {
  const auto& m = c.module;
  GradedOperator dstar = c.d.adjoint();
  GradedOperator lap = c.d.compose(dstar) + dstar.compose(c.d);
  GradedOperator s(m, m);
  for (int p : m->degrees()) {
    if (m->rank(p) == 0) continue;
    DenseMat L = lap.has_block(p) ? DenseMat::from_sparse(lap.block(p))
                                  : DenseMat(m->rank(p), m->rank(p));
    DenseMat Linv;
    try {
      Linv = L.inverse();
    } catch (const Error&) {
      throw Error(ErrorKind::NotInvertible,
                  "complex is not acyclic: Laplacian singular in degree " +
                      std::to_string(p));
    }
    if (!dstar.has_block(p)) continue;
    SparseMat sp = kernels::spmm(dstar.block(p), Linv.to_sparse());
    sp.for_each([&](int i, int j, const GQ& v) {
      s.add_entry(p, p + 1, i, j, v);
    });
  }
  // certificate: d s + s d = 1 exactly
  GradedOperator one = GradedOperator::identity(m);
  if (!verify_homotopy(c, c, one, GradedOperator::zero(m, m), s))
    throw Error(ErrorKind::CertificateFailure,
                "contraction identity d s + s d = 1 failed");
  return s;
}

HomotopyEquivalence homotopy_inverse(const ChainComplex& src,
                                     const ChainComplex& dst,
                                     const GradedOperator& f) {
  MappingCone mc = mapping_cone(src, dst, f);
  GradedOperator s;
  try {
    s = contraction(mc.cone);
  } catch (const Error& e) {
    throw Error(ErrorKind::NotEquivalence,
                std::string("mapping cone is not acyclic (") + e.what() + ")");
  }
  auto cm = mc.cone.module;
  HomotopyEquivalence he{GradedOperator(dst.module, src.module),
                         GradedOperator(src.module, src.module),
                         GradedOperator(dst.module, dst.module)};
  // s_p : Cone_p -> Cone_{p+1}; within degree p locals are C_p then D_{p+1}
  for (auto& [p, blk] : s.blocks()) {
    const SparseMat& sp = blk.second;
    int rC_lo = src.module->rank(p);      // C_p size (cols)
    int rC_hi = src.module->rank(p + 1);  // C_{p+1} size (rows)
    sp.for_each([&](int i, int j, const GQ& v) {
      bool row_in_C = i < rC_hi;
      bool col_in_C = j < rC_lo;
      if (row_in_C && col_in_C) {
        // a_p : C_p -> C_{p+1}; h_src = -a
        he.h_src.add_entry(p, p + 1, i, j, -v);
      } else if (row_in_C && !col_in_C) {
        // g : D_{p+1} -> C_{p+1}
        he.g.add_entry(p + 1, p + 1, i, j - rC_lo, v);
      } else if (!row_in_C && !col_in_C) {
        // e : D_{p+1} -> D_{p+2}; h_dst = e
        he.h_dst.add_entry(p + 1, p + 2, i - rC_hi, j - rC_lo, v);
      }
      // the C -> D corner is junk of degree +2 and is discarded
    });
  }
  // certificates
  if (chain_map_defect(dst, src, he.g))
    throw Error(ErrorKind::CertificateFailure, "extracted g is not a chain map");
  GradedOperator gf = he.g.compose(f);
  GradedOperator fg = f.compose(he.g);
  if (!verify_homotopy(src, src, gf, GradedOperator::identity(src.module),
                          he.h_src))
    throw Error(ErrorKind::CertificateFailure, "g f ~ 1 witness failed");
  if (!verify_homotopy(dst, dst, fg, GradedOperator::identity(dst.module),
                          he.h_dst))
    throw Error(ErrorKind::CertificateFailure, "f g ~ 1 witness failed");
  return he;
}

}  // namespace siglab
