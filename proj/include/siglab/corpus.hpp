#pragma once

#include "siglab/complexes.hpp"

namespace siglab {

/// Named example complexes.
///
///   point               one vertex
///   circle_k            k-gon, k >= 3 (unit side for k = 4, 6)
///   boundary_simplex_n  boundary of the (n+1)-simplex, an n-sphere
///   cp2_9               the 9-vertex triangulation of the complex
///                       projective plane, oriented so its signature is +1
///   disk_n              the full n-simplex (underlying complex of the
///                       disk pair disk_pair_n)
///   product(a,b)        staircase triangulation of the product of two
///                       closed corpus complexes
///
/// Throws UnknownCorpus for anything else.
TypedComplex corpus_complex(const std::string& name);

/// True if the name denotes a pair (disk_pair_n).
bool is_pair_name(const std::string& name);

/// Underlying complex of a pair name (the disk).
TypedComplex corpus_pair_complex(const std::string& name);

/// Staircase (shuffle) triangulation of the product of two closed
/// oriented complexes.  Vertex types add; the product fundamental class
/// is the signed sum of all shuffle staircases.
TypedComplex product_complex(const TypedComplex& a, const TypedComplex& b);

}  // namespace siglab
