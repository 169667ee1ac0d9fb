#pragma once

#include <vector>

#include "siglab/scalar.hpp"

namespace siglab {

/// A point with exact rational coordinates.
using Point = std::vector<Q>;

/// Proper metric space carrying the basis of a controlled module.  The
/// space is a product of Euclidean factors with the max metric across
/// factors; a plain Euclidean space is the single-factor case, and tensor
/// products concatenate factor lists.  Keeping squared distances rational
/// lets every propagation bound in the library be checked exactly.
struct ControlSpace {
  std::vector<int> factor_dims;

  ControlSpace() = default;
  explicit ControlSpace(int dim) : factor_dims{dim} {}

  int total_dim() const {
    int d = 0;
    for (int f : factor_dims) d += f;
    return d;
  }

  static ControlSpace product(const ControlSpace& a, const ControlSpace& b) {
    ControlSpace p = a;
    p.factor_dims.insert(p.factor_dims.end(), b.factor_dims.begin(),
                         b.factor_dims.end());
    return p;
  }

  /// Squared distance, exact.  Max over factors of the Euclidean squared
  /// distance within each factor.
  Q dist2(const Point& x, const Point& y) const;

  double dist(const Point& x, const Point& y) const;

  static Point concat(const Point& x, const Point& y) {
    Point p = x;
    p.insert(p.end(), y.begin(), y.end());
    return p;
  }

  /// Midpoint (x+y)/2, exact.
  static Point midpoint(const Point& x, const Point& y);
};

}  // namespace siglab
