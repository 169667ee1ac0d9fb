#pragma once

#include <string>
#include <vector>

#include "siglab/chain.hpp"

namespace siglab {

/// Finite simplicial complex with an injective-per-simplex integer typing
/// of the vertices and exact rational coordinates.  Vertices inside each
/// simplex are kept in ascending type order; that order fixes orientation
/// conventions and boundary signs throughout.
class TypedComplex {
 public:
  struct Vertex {
    std::string id;
    int type = 0;
    Point coords;
  };

  /// Builds the face closure of the given top simplices (which need not
  /// all have the same dimension).  `top` lists vertex ids; the attached
  /// sign refers to the written order and is converted to the canonical
  /// ascending-type order internally.
  static TypedComplex build(ControlSpace space, std::vector<Vertex> vertices,
                            const std::vector<std::pair<std::vector<std::string>, int>>& top);

  const ControlSpace& space() const { return space_; }
  int dim() const { return dim_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  /// Vertex index by id, or -1.
  int vertex_index(const std::string& id) const;

  /// Simplices of dimension k, each a vector of vertex indices in
  /// ascending type order; lexicographically sorted.
  const std::vector<std::vector<int>>& simplices(int k) const;
  int simplex_count(int k) const;
  int total_cells() const;
  /// Index of a simplex (given in ascending type order) within its
  /// dimension, or -1.
  int simplex_index(const std::vector<int>& verts) const;

  /// Top simplices as given to build (canonicalized), with signs.
  const std::vector<std::pair<int, int>>& top() const { return top_; }

  std::string simplex_id(int k, int idx) const;
  Point barycenter(int k, int idx) const;

  /// Chain module: basis element per simplex located at its barycenter.
  ModulePtr chain_module() const;
  /// Simplicial boundary with ascending-type-order signs.
  GradedOperator boundary(ModulePtr module) const;
  ChainComplex chains() const;

  /// The chain carried by `top()` with the stored signs.
  Chain fundamental_cycle(ModulePtr module) const;

  /// Checks that the signed sum of top simplices is a cycle; throws
  /// NotACycle otherwise.
  void verify_fundamental_cycle() const;

  /// Orients a closed pseudomanifold by sign propagation across shared
  /// ridges, overwriting the stored top signs.  root_sign fixes the
  /// orientation class.  Throws NotACycle if no consistent orientation
  /// exists.
  void orient(int root_sign = 1);

  /// Maximum number of positive-dimensional simplices meeting a vertex.
  int max_vertex_degree() const;
  /// Throws if max_vertex_degree() exceeds the bound.
  void check_bounded_geometry(int bound) const;

  /// Largest simplex diameter (max pairwise vertex distance), exact
  /// square and float value.
  Q mesh2() const;
  double mesh() const;

  /// Full structural validation (face closure is implied by build; this
  /// re-checks typing, geometry and, when `closed`, that every ridge
  /// bounds exactly two top cells).
  void validate(bool closed = false) const;

 private:
  ControlSpace space_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<std::vector<int>>> faces_;  // [dim][idx] -> verts
  std::vector<std::pair<int, int>> top_;              // (idx in faces_[dim_], sign)
  int dim_ = -1;

  friend class SubdivisionRecord;
};

}  // namespace siglab
