#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "siglab/control.hpp"
#include "siglab/errors.hpp"

namespace siglab {

/// Finitely generated free module with a preferred graded basis, each
/// basis element pinned to a point of a control space.  This is the
/// geometric datum required to speak of propagation of operators.
class ControlledModule {
 public:
  struct Elem {
    std::string id;  // globally unique within the module
    int degree;
    Point loc;
  };

  explicit ControlledModule(ControlSpace space) : space_(std::move(space)) {}

  int add(const std::string& id, int degree, Point loc);

  const ControlSpace& space() const { return space_; }
  int rank() const { return (int)elems_.size(); }
  int rank(int degree) const;
  const Elem& elem(int g) const { return elems_[g]; }
  const std::vector<Elem>& elems() const { return elems_; }

  int min_degree() const;
  int max_degree() const;
  std::vector<int> degrees() const;

  /// Global indices of the degree-p part, in insertion order.
  const std::vector<int>& degree_indices(int p) const;

  /// (degree, local) <-> global translation.
  int global_index(int degree, int local) const {
    return degree_indices(degree)[local];
  }
  int local_index(int g) const { return local_of_[g]; }

  int index_of(const std::string& id) const;
  bool has_id(const std::string& id) const {
    return by_id_.count(id) != 0;
  }

  Q dist2(int g1, int g2) const {
    return space_.dist2(elems_[g1].loc, elems_[g2].loc);
  }

  /// Direct sum; ids are prefixed with the given tags to stay unique.
  /// Elements of `a` come first, preserving order.
  static std::shared_ptr<ControlledModule> direct_sum(
      const ControlledModule& a, const ControlledModule& b,
      const std::string& tag_a, const std::string& tag_b,
      int degree_shift_b = 0);

 private:
  ControlSpace space_;
  std::vector<Elem> elems_;
  std::map<int, std::vector<int>> by_degree_;
  std::vector<int> local_of_;
  std::unordered_map<std::string, int> by_id_;
  static const std::vector<int> empty_;
};

using ModulePtr = std::shared_ptr<const ControlledModule>;

}  // namespace siglab
