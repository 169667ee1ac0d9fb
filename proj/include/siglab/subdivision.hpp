#pragma once

#include "siglab/complexes.hpp"

namespace siglab {

/// One fragment of the standard subdivision of the k-simplex: a maximal
/// chain of nested position intervals, listed in ascending width (=type)
/// order, together with its orientation sign relative to the parent.
struct Fragment {
  std::vector<std::pair<int, int>> intervals;
  int sign;
  /// Fraction of the parent simplex volume, exact (maximal fragments only).
  Q volume = 0;
};

/// All 2^k top fragments of the standard k-simplex (cached).
const std::vector<Fragment>& simplex_fragments(int k);

/// All p-dimensional fragments strictly interior to the standard
/// k-simplex plus those on its faces -- i.e. every chain of length p+1 in
/// the interval order.  Used by the chain map.
std::vector<Fragment> simplex_fragments_dim(int k, int p);

/// Number of cells (all dimensions) of the subdivision of a complex,
/// computed without building it.
long predicted_subdivision_cells(const TypedComplex& c);

/// Default ceiling on the total cell count of a subdivision result.
inline constexpr long kDefaultCellCap = 1000000;

/// Standard (edgewise) subdivision.  New vertices sit at edge midpoints
/// with type equal to the type gap of their parent edge; original
/// vertices keep their id and get type 0.  Throws ResourceLimit if the
/// result would exceed cell_cap cells.
TypedComplex standard_subdivide(const TypedComplex& c,
                                long cell_cap = kDefaultCellCap);

/// Levels 1..levels of iterated subdivision (level 0 is the input).
std::vector<TypedComplex> iterate_subdivide(const TypedComplex& c, int levels,
                                            long cell_cap = kDefaultCellCap);

/// The subdivision chain map A sending each parent simplex to the signed
/// sum of its same-dimensional fragments.  Exactly a chain map, and maps
/// the fundamental cycle of the parent to that of the child.
GradedOperator subdivision_chain_map(const TypedComplex& parent,
                                     ModulePtr parent_module,
                                     const TypedComplex& child,
                                     ModulePtr child_module);

/// Midpoint vertex id convention used by the subdivision.
std::string midpoint_id(const std::string& a, const std::string& b);

}  // namespace siglab
