#include "siglab/operators.hpp"

#include <cmath>

namespace siglab {

GradedOperator GradedOperator::identity(ModulePtr m) {
  GradedOperator id(m, m);
  for (int p : m->degrees())
    id.blocks_[p] = {p, SparseMat::identity(m->rank(p))};
  return id;
}

int GradedOperator::target_degree(int src_deg) const {
  auto it = blocks_.find(src_deg);
  if (it == blocks_.end())
    throw Error(ErrorKind::GradingMismatch,
                "no block at degree " + std::to_string(src_deg));
  return it->second.first;
}

const SparseMat& GradedOperator::block(int src_deg) const {
  auto it = blocks_.find(src_deg);
  if (it == blocks_.end())
    throw Error(ErrorKind::GradingMismatch,
                "no block at degree " + std::to_string(src_deg));
  return it->second.second;
}

SparseMat& GradedOperator::block_mut(int src_deg, int dst_deg) {
  auto it = blocks_.find(src_deg);
  if (it == blocks_.end()) {
    auto [jt, ok] = blocks_.emplace(
        src_deg,
        std::make_pair(dst_deg, SparseMat(dst_->rank(dst_deg),
                                          src_->rank(src_deg))));
    (void)ok;
    return jt->second.second;
  }
  if (it->second.first != dst_deg)
    throw Error(ErrorKind::GradingMismatch,
                "conflicting target degree for block " +
                    std::to_string(src_deg));
  return it->second.second;
}

void GradedOperator::set_entry(int src_deg, int dst_deg, int dst_local,
                               int src_local, GQ v) {
  block_mut(src_deg, dst_deg).set(dst_local, src_local, std::move(v));
}

void GradedOperator::add_entry(int src_deg, int dst_deg, int dst_local,
                               int src_local, const GQ& v) {
  block_mut(src_deg, dst_deg).add_at(dst_local, src_local, v);
}

bool GradedOperator::is_zero() const {
  for (auto& [p, b] : blocks_)
    if (!b.second.is_zero()) return false;
  return true;
}

GradedOperator GradedOperator::operator-() const {
  GradedOperator r(src_, dst_);
  for (auto& [p, b] : blocks_) r.blocks_[p] = {b.first, -b.second};
  return r;
}

GradedOperator GradedOperator::scaled(const GQ& c) const {
  GradedOperator r(src_, dst_);
  if (c.is_zero()) return r;
  for (auto& [p, b] : blocks_) r.blocks_[p] = {b.first, b.second.scaled(c)};
  return r;
}

GradedOperator GradedOperator::scaled_by_degree(
    const std::function<GQ(int)>& c) const {
  GradedOperator r(src_, dst_);
  for (auto& [p, b] : blocks_) {
    GQ f = c(p);
    if (f.is_zero()) continue;
    r.blocks_[p] = {b.first, b.second.scaled(f)};
  }
  return r;
}

GradedOperator GradedOperator::operator+(const GradedOperator& o) const {
  if (src_ != o.src_ || dst_ != o.dst_)
    throw Error(ErrorKind::GradingMismatch, "sum over different modules");
  GradedOperator r = *this;
  for (auto& [p, b] : o.blocks_) {
    auto it = r.blocks_.find(p);
    if (it == r.blocks_.end()) {
      r.blocks_[p] = b;
    } else {
      if (it->second.first != b.first)
        throw Error(ErrorKind::GradingMismatch,
                    "sum with conflicting target degrees at degree " +
                        std::to_string(p));
      it->second.second += b.second;
    }
  }
  return r;
}

GradedOperator GradedOperator::operator-(const GradedOperator& o) const {
  return *this + (-o);
}

GradedOperator GradedOperator::compose(const GradedOperator& f) const {
  if (src_ != f.dst_)
    throw Error(ErrorKind::GradingMismatch, "composition domain mismatch");
  GradedOperator r(f.src_, dst_);
  for (auto& [p, fb] : f.blocks_) {
    int q = fb.first;  // f: p -> q
    auto it = blocks_.find(q);
    if (it == blocks_.end()) continue;
    int s = it->second.first;  // this: q -> s
    SparseMat prod = kernels::spmm(it->second.second, fb.second);
    if (!prod.is_zero()) r.blocks_[p] = {s, std::move(prod)};
  }
  return r;
}

GradedOperator GradedOperator::adjoint() const {
  GradedOperator r(dst_, src_);
  for (auto& [p, b] : blocks_) {
    int q = b.first;
    if (r.blocks_.count(q))
      throw Error(ErrorKind::GradingMismatch,
                  "adjoint of non-injective grade map");
    r.blocks_[q] = {p, b.second.conj_transpose()};
  }
  return r;
}

bool GradedOperator::operator==(const GradedOperator& o) const {
  if (src_ != o.src_ || dst_ != o.dst_) return false;
  // compare as if missing blocks were zero
  auto nonzero_blocks = [](const GradedOperator& g) {
    std::map<int, std::pair<int, const SparseMat*>> out;
    for (auto& [p, b] : g.blocks_)
      if (!b.second.is_zero()) out[p] = {b.first, &b.second};
    return out;
  };
  auto a = nonzero_blocks(*this), b = nonzero_blocks(o);
  if (a.size() != b.size()) return false;
  for (auto& [p, pa] : a) {
    auto it = b.find(p);
    if (it == b.end() || it->second.first != pa.first ||
        !(*it->second.second == *pa.second))
      return false;
  }
  return true;
}

Q GradedOperator::propagation2() const {
  Q best(0);
  for (auto& [p, b] : blocks_) {
    // rows live in dst degree b.first, cols in src degree p
    const auto& rows = dst_->degree_indices(b.first);
    const auto& cols = src_->degree_indices(p);
    b.second.for_each([&](int i, int j, const GQ&) {
      Q d = dst_->space().dist2(dst_->elem(rows[i]).loc,
                                src_->elem(cols[j]).loc);
      if (d > best) best = std::move(d);
    });
  }
  return best;
}

double GradedOperator::propagation() const {
  return std::sqrt(propagation2().get_d());
}

SparseMat GradedOperator::flatten() const {
  SparseMat m(dst_->rank(), src_->rank());
  for (auto& [p, b] : blocks_) {
    const auto& rows = dst_->degree_indices(b.first);
    const auto& cols = src_->degree_indices(p);
    b.second.for_each([&](int i, int j, const GQ& v) {
      m.set(rows[i], cols[j], v);
    });
  }
  return m;
}

size_t GradedOperator::nnz() const {
  size_t n = 0;
  for (auto& [p, b] : blocks_) n += b.second.nnz();
  return n;
}

double FlatOperator::propagation() const {
  return std::sqrt(propagation2().get_d());
}

}  // namespace siglab
