// Operator paths: factored samples, sampled certificates and the exact
// support bookkeeping behind per-segment propagation bounds.

#include "siglab/paths.hpp"

#include <algorithm>
#include <cmath>

#include "paths_detail.hpp"
#include "siglab/errors.hpp"

namespace siglab {

namespace detail {

// ---- OddPoly ----------------------------------------------------------------

namespace {

// ubar = (2u - a - b) / (b - a), guarded for the degenerate one-point
// domain (where the series is constant and the affine map is never used).
inline double affine_scale(double a, double b) { return b == a ? 1.0 : b - a; }

}  // namespace

double OddPoly::eval_q(double u) const {
  const double den = affine_scale(a, b);
  const double ub = (2.0 * u - a - b) / den;
  double b1 = 0.0, b2 = 0.0;
  for (size_t k = cheb.size(); k-- > 1;) {
    const double t = 2.0 * ub * b1 - b2 + cheb[k];
    b2 = b1;
    b1 = t;
  }
  return cheb[0] + ub * b1 - b2;
}

// Clenshaw with vector iterates; U(z) = ubar * z with ubar the affine
// image of M^2.
DVec OddPoly::apply_q(const SpMat& m, const DVec& x) const {
  const double den = affine_scale(a, b);
  const auto U = [&](const DVec& z) -> DVec {
    if (z.size() == 0) return z;
    return (2.0 * (m * (m * z).eval()) - (a + b) * z) / den;
  };
  DVec b1 = DVec::Zero(x.size()), b2 = DVec::Zero(x.size());
  for (size_t k = cheb.size(); k-- > 1;) {
    DVec t = 2.0 * U(b1) - b2 + cheb[k] * x;
    b2.swap(b1);
    b1 = std::move(t);
  }
  return cheb[0] * x + U(b1) - b2;
}

DVec OddPoly::apply_p(const SpMat& m, const DVec& x) const {
  return m * apply_q(m, x);
}

DVec OddPoly::apply_e(const SpMat& m, const DVec& x) const {
  return m * (m * apply_q(m, x)).eval();
}

DMat OddPoly::dense_p(const SpMat& m) const {
  const Eigen::Index n = m.rows();
  const double den = affine_scale(a, b);
  const auto U = [&](const DMat& z) -> DMat {
    return (2.0 * (m * (m * z).eval()) - (a + b) * z) / den;
  };
  DMat b1 = DMat::Zero(n, n), b2 = DMat::Zero(n, n);
  for (size_t k = cheb.size(); k-- > 1;) {
    DMat t = 2.0 * U(b1) - b2 + cheb[k] * DMat::Identity(n, n);
    b2.swap(b1);
    b1 = std::move(t);
  }
  DMat q = cheb[0] * DMat::Identity(n, n) + U(b1) - b2;
  return m * q;
}

// ---- BitPattern -------------------------------------------------------------

BitPattern BitPattern::from(const SparseMat& m) {
  BitPattern p(m.rows(), m.cols());
  m.for_each([&](int i, int j, const GQ&) { p.set(i, j); });
  return p;
}

BitPattern BitPattern::from(const SpMat& m) {
  BitPattern p((int)m.rows(), (int)m.cols());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      p.set((int)it.row(), (int)it.col());
  return p;
}

BitPattern BitPattern::ident(int n) {
  BitPattern p(n, n);
  for (int i = 0; i < n; ++i) p.set(i, i);
  return p;
}

void BitPattern::or_with(const BitPattern& o) {
  for (size_t w = 0; w < bits.size(); ++w) bits[w] |= o.bits[w];
}

void BitPattern::or_ident() {
  const int n = std::min(rows, cols);
  for (int i = 0; i < n; ++i) set(i, i);
}

BitPattern BitPattern::mul(const BitPattern& o) const {
  BitPattern out(rows, o.cols);
  for (int i = 0; i < rows; ++i) {
    uint64_t* dst = &out.bits[(size_t)i * out.words];
    const uint64_t* row = &bits[(size_t)i * words];
    for (int wj = 0; wj < words; ++wj) {
      uint64_t w = row[wj];
      while (w) {
        const int j = wj * 64 + __builtin_ctzll(w);
        w &= w - 1;
        const uint64_t* src = &o.bits[(size_t)j * o.words];
        for (int k = 0; k < o.words; ++k) dst[k] |= src[k];
      }
    }
  }
  return out;
}

BitPattern BitPattern::power_closure(int k) const {
  BitPattern r = *this;
  r.or_ident();
  for (int reach = 1; reach < std::max(k, 1); reach *= 2) r = r.mul(r);
  return r;
}

std::vector<std::pair<int, int>> BitPattern::support() const {
  std::vector<std::pair<int, int>> s;
  for (int i = 0; i < rows; ++i) {
    const uint64_t* row = &bits[(size_t)i * words];
    for (int wj = 0; wj < words; ++wj) {
      uint64_t w = row[wj];
      while (w) {
        s.emplace_back(i, wj * 64 + __builtin_ctzll(w));
        w &= w - 1;
      }
    }
  }
  return s;
}

// ---- Factor -----------------------------------------------------------------

Factor Factor::sparse_f(int sub, std::shared_ptr<const SpMat> m,
                        std::shared_ptr<const SparseMat> exact) {
  Factor f;
  f.kind = Kind::sparse;
  f.sub = sub;
  f.size = (int)m->rows();
  f.sp = std::move(m);
  f.exact = std::move(exact);
  return f;
}

Factor Factor::dense_f(int sub, std::shared_ptr<const DMat> m) {
  Factor f;
  f.kind = Kind::dense;
  f.sub = sub;
  f.size = (int)m->rows();
  f.dn = std::move(m);
  return f;
}

Factor Factor::poly_f(int sub, std::shared_ptr<const SpMat> m,
                      std::shared_ptr<const OddPoly> p) {
  Factor f;
  f.kind = Kind::poly;
  f.sub = sub;
  f.size = (int)m->rows();
  f.arg = std::move(m);
  f.poly = std::move(p);
  return f;
}

Factor Factor::linear_f(int sub, std::shared_ptr<const DMat> delta, double s,
                        double delta_norm) {
  Factor f;
  f.kind = Kind::linear;
  f.sub = sub;
  f.size = (int)delta->rows();
  f.delta = std::move(delta);
  f.s = s;
  f.delta_norm = delta_norm;
  return f;
}

Factor Factor::affine_e_f(int sub, std::shared_ptr<const SpMat> m,
                          std::shared_ptr<const OddPoly> p, double s,
                          double e_gap_norm) {
  Factor f;
  f.kind = Kind::affine_e;
  f.sub = sub;
  f.size = (int)m->rows();
  f.arg = std::move(m);
  f.poly = std::move(p);
  f.s = s;
  f.delta_norm = e_gap_norm;
  return f;
}

void Factor::apply(DVec& w) const {
  auto seg = w.segment(sub, size);
  switch (kind) {
    case Kind::sparse:
      seg = (*sp * seg).eval();
      break;
    case Kind::dense:
      seg = (*dn * seg).eval();
      break;
    case Kind::poly:
      seg = poly->apply_p(*arg, seg);
      break;
    case Kind::linear:
      seg = (seg + s * (*delta * seg)).eval();
      break;
    case Kind::affine_e:
      seg = ((1.0 - s) * seg + s * poly->apply_e(*arg, seg)).eval();
      break;
  }
}

void Factor::apply_adjoint(DVec& w) const {
  auto seg = w.segment(sub, size);
  switch (kind) {
    case Kind::sparse:
      seg = (sp->adjoint() * seg).eval();
      break;
    case Kind::dense:
      seg = (dn->adjoint() * seg).eval();
      break;
    case Kind::poly:
      // p(M) is Hermitian for Hermitian M and real coefficients
      seg = poly->apply_p(*arg, seg);
      break;
    case Kind::linear:
      seg = (seg + s * (delta->adjoint() * seg)).eval();
      break;
    case Kind::affine_e:
      // e(M) is Hermitian for Hermitian M and real coefficients
      seg = ((1.0 - s) * seg + s * poly->apply_e(*arg, seg)).eval();
      break;
  }
}

double Factor::sv_floor(double tol) const {
  switch (kind) {
    case Kind::sparse: {
      if (!sv_cache)
        sv_cache = spectral::min_singular_value(*sp, tol, /*dense_cutoff=*/384);
      return *sv_cache;
    }
    case Kind::dense: {
      if (!sv_cache) {
        Eigen::BDCSVD<DMat> svd(*dn);
        const auto& sv = svd.singularValues();
        sv_cache = sv.size() ? double(sv(sv.size() - 1)) : 0.0;
      }
      return *sv_cache;
    }
    case Kind::poly: {
      // sigma_min(p(M)) >= sigma_min(M p(M)) / ||M|| and M p(M) = e(M)
      // with ||e(M) - I|| measured directly (no spectral-domain
      // assumption), so the bound certifies itself or honestly fails.
      if (!sv_cache) {
        const Eigen::Index n = arg->rows();
        if (!norm_cache) norm_cache = spectral::norm(*arg, tol);
        const double e_gap = spectral::norm_of_map(
            n, tol,
            [&](const DVec& v) { return (poly->apply_e(*arg, v) - v).eval(); },
            [&](const DVec& v) { return (poly->apply_e(*arg, v) - v).eval(); });
        const double nm = std::max(*norm_cache, 1e-300);
        sv_cache = std::max(0.0, (1.0 - e_gap) / nm);
      }
      return *sv_cache;
    }
    case Kind::linear:
    case Kind::affine_e:
      return std::max(0.0, 1.0 - std::abs(s) * delta_norm);
  }
  return 0.0;
}

BitPattern Factor::pattern() const {
  switch (kind) {
    case Kind::sparse:
      return BitPattern::from(*sp);
    case Kind::dense: {
      BitPattern p(size, size);
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
          if ((*dn)(i, j) != CD(0, 0)) p.set(i, j);
      return p;
    }
    case Kind::poly:
      return BitPattern::from(*arg).power_closure(poly->degree());
    case Kind::linear: {
      BitPattern p(size, size);
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
          if ((*delta)(i, j) != CD(0, 0)) p.set(i, j);
      p.or_ident();
      return p;
    }
    case Kind::affine_e:
      // e has degree deg(p) + 1; the closure already contains I
      return BitPattern::from(*arg).power_closure(poly->degree() + 1);
  }
  return BitPattern(size, size);
}

// ---- SampleData -------------------------------------------------------------

DVec SampleData::apply(const DVec& v) const {
  DVec out = v;
  if (window == 0 || factors.empty()) return out;
  DVec w = v.segment(offset, window);
  for (size_t i = factors.size(); i-- > 0;) factors[i]->apply(w);
  out.segment(offset, window) = w;
  return out;
}

DVec SampleData::apply_adjoint(const DVec& v) const {
  DVec out = v;
  if (window == 0 || factors.empty()) return out;
  DVec w = v.segment(offset, window);
  for (auto& f : factors) f->apply_adjoint(w);
  out.segment(offset, window) = w;
  return out;
}

double SampleData::min_sv(double tol) const {
  if (sv_cache) return *sv_cache;
  double bound = 1.0;
  for (auto& f : factors) bound *= f->sv_floor(tol);
  if (window < dim) bound = std::min(bound, 1.0);
  sv_cache = bound;
  return bound;
}

SampleOperator make_sample(int dim, int offset, std::vector<FactorPtr> factors,
                           std::shared_ptr<const SparseMat> exact_whole) {
  auto d = std::make_shared<SampleData>();
  d->dim = dim;
  d->offset = offset;
  d->window = 0;
  for (auto& f : factors) d->window = std::max(d->window, f->sub + f->size);
  d->factors = std::move(factors);
  d->exact_whole = std::move(exact_whole);
  return SampleOperator(std::move(d));
}

std::shared_ptr<const SpMat> shadow(const SparseMat& m) {
  return std::make_shared<SpMat>(spectral::to_eigen(m));
}

}  // namespace detail

// ---- SampleOperator ---------------------------------------------------------

SampleOperator SampleOperator::identity(int dim) {
  auto d = std::make_shared<detail::SampleData>();
  d->dim = dim;
  return SampleOperator(std::move(d));
}

SampleOperator SampleOperator::exact(int dim, int offset, SparseMat block) {
  if (block.rows() != block.cols())
    throw Error(ErrorKind::BadInput, "sample blocks must be square");
  if (offset < 0 || offset + block.rows() > dim)
    throw Error(ErrorKind::BadInput, "sample block exceeds the ambient basis");
  auto ex = std::make_shared<const SparseMat>(std::move(block));
  auto fac = std::make_shared<const detail::Factor>(
      detail::Factor::sparse_f(0, detail::shadow(*ex), ex));
  return detail::make_sample(dim, offset, {std::move(fac)}, ex);
}

int SampleOperator::dim() const { return data_ ? data_->dim : 0; }
int SampleOperator::offset() const { return data_ ? data_->offset : 0; }
int SampleOperator::window() const { return data_ ? data_->window : 0; }

double SampleOperator::min_singular_value(double tol) const {
  if (!data_) return 0.0;
  return data_->min_sv(tol);
}

double SampleOperator::distance_to(const SampleOperator& o, double tol) const {
  if (!data_ || !o.data_ || data_->dim != o.data_->dim)
    throw Error(ErrorKind::BadInput,
                "sample distance requires a common ambient basis");
  if (shares_data(o)) return 0.0;
  const Eigen::Index n = data_->dim;
  return spectral::norm_of_map(
      n, tol,
      [&](const detail::DVec& v) {
        return (data_->apply(v) - o.data_->apply(v)).eval();
      },
      [&](const detail::DVec& v) {
        return (data_->apply_adjoint(v) - o.data_->apply_adjoint(v)).eval();
      });
}

const SparseMat* SampleOperator::exact_block() const {
  return data_ && data_->exact_whole ? data_->exact_whole.get() : nullptr;
}

// ---- certification ----------------------------------------------------------

PathCertificate certify_path(const OperatorPath& path, int samples_per_segment,
                             double tol) {
  PathCertificate cert;
  cert.min_singular_value = 1.0;
  SampleOperator prev_end;
  bool have_prev = false;
  for (const auto& seg : path.segments) {
    SegmentCertificate sc;
    sc.description = seg.description;
    sc.t0 = seg.t0;
    sc.t1 = seg.t1;
    sc.propagation2 = seg.prop2;
    sc.propagation = std::sqrt(to_double(seg.prop2));
    sc.min_singular_value = 1.0;

    const int k =
        (seg.t1 > seg.t0) ? std::max(samples_per_segment, 2) : 1;
    SampleOperator prev;
    for (int i = 0; i < k; ++i) {
      const double t =
          (k == 1) ? seg.t0
                   : seg.t0 + (seg.t1 - seg.t0) * double(i) / double(k - 1);
      SampleOperator s = seg.at(t);
      const double sv = s.min_singular_value(tol);
      cert.samples.push_back({t, sv, sc.propagation});
      sc.min_singular_value = std::min(sc.min_singular_value, sv);
      if (i == 0) {
        if (have_prev) {
          sc.junction_shared = s.shares_data(prev_end);
          sc.junction_gap = sc.junction_shared ? 0.0 : s.distance_to(prev_end);
          if (!sc.junction_shared) cert.junctions_exact = false;
          cert.continuity_modulus =
              std::max(cert.continuity_modulus, sc.junction_gap);
        }
      } else {
        sc.continuity = std::max(sc.continuity, s.distance_to(prev));
      }
      prev = s;
    }
    sc.samples = k;
    prev_end = prev;
    have_prev = true;
    cert.min_singular_value =
        std::min(cert.min_singular_value, sc.min_singular_value);
    cert.continuity_modulus = std::max(cert.continuity_modulus, sc.continuity);
    cert.segments.push_back(std::move(sc));
  }
  if (path.segments.empty()) cert.min_singular_value = 0.0;
  return cert;
}

OperatorPath constant_path(ModulePtr ambient, SampleOperator sample,
                           const std::string& description) {
  OperatorPath p;
  p.ambient = ambient;
  PathSegment seg;
  seg.t0 = 0.0;
  seg.t1 = 0.0;
  seg.description = description;
  if (const SparseMat* ex = sample.exact_block()) {
    std::vector<std::pair<int, int>> sup;
    const int off = sample.offset();
    ex->for_each([&](int i, int j, const GQ&) {
      sup.emplace_back(i + off, j + off);
    });
    seg.prop2 = kernels::support_propagation2(sup, *ambient, *ambient,
                                              kernels::default_mode());
  }
  seg.at = [s = std::move(sample)](double) { return s; };
  p.segments.push_back(std::move(seg));
  return p;
}

}  // namespace siglab
