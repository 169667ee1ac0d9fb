#pragma once

#include "siglab/chain.hpp"

namespace siglab {

/// Solves f = d_dst o h + h o d_src for an operator h of uniform degree
/// shift `shift + 1`, where f : src -> dst carries the uniform degree
/// shift `shift`.  Underdetermined coordinates are pinned to zero by the
/// exact solver; throws NotEquivalence when no solution exists (f is not
/// null-homotopic in the required sense).
GradedOperator solve_homotopy(const ChainComplex& src, const ChainComplex& dst,
                              const GradedOperator& f, int shift);

}  // namespace siglab
