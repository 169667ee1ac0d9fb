#include "siglab/module.hpp"

namespace siglab {

const std::vector<int> ControlledModule::empty_;

int ControlledModule::add(const std::string& id, int degree, Point loc) {
  if (by_id_.count(id))
    throw Error(ErrorKind::BadInput, "duplicate basis id " + id);
  int g = (int)elems_.size();
  elems_.push_back({id, degree, std::move(loc)});
  by_degree_[degree].push_back(g);
  local_of_.push_back((int)by_degree_[degree].size() - 1);
  by_id_[id] = g;
  return g;
}

int ControlledModule::rank(int degree) const {
  auto it = by_degree_.find(degree);
  return it == by_degree_.end() ? 0 : (int)it->second.size();
}

int ControlledModule::min_degree() const {
  return by_degree_.empty() ? 0 : by_degree_.begin()->first;
}

int ControlledModule::max_degree() const {
  return by_degree_.empty() ? -1 : by_degree_.rbegin()->first;
}

std::vector<int> ControlledModule::degrees() const {
  std::vector<int> ds;
  for (auto& [d, v] : by_degree_)
    if (!v.empty()) ds.push_back(d);
  return ds;
}

const std::vector<int>& ControlledModule::degree_indices(int p) const {
  auto it = by_degree_.find(p);
  return it == by_degree_.end() ? empty_ : it->second;
}

int ControlledModule::index_of(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    throw Error(ErrorKind::BadInput, "unknown basis id " + id);
  return it->second;
}

std::shared_ptr<ControlledModule> ControlledModule::direct_sum(
    const ControlledModule& a, const ControlledModule& b,
    const std::string& tag_a, const std::string& tag_b, int degree_shift_b) {
  if (!(a.space().factor_dims == b.space().factor_dims))
    throw Error(ErrorKind::GradingMismatch,
                "direct sum of modules over different control spaces");
  auto m = std::make_shared<ControlledModule>(a.space());
  for (auto& e : a.elems()) m->add(tag_a + e.id, e.degree, e.loc);
  for (auto& e : b.elems())
    m->add(tag_b + e.id, e.degree + degree_shift_b, e.loc);
  return m;
}

}  // namespace siglab
