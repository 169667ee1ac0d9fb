#include "siglab/control.hpp"

#include <cassert>
#include <cmath>

namespace siglab {

Q ControlSpace::dist2(const Point& x, const Point& y) const {
  assert((int)x.size() == total_dim() && (int)y.size() == total_dim());
  Q best(0);
  size_t off = 0;
  for (int f : factor_dims) {
    Q s(0);
    for (int k = 0; k < f; ++k) {
      Q d = x[off + k] - y[off + k];
      s += d * d;
    }
    if (s > best) best = s;
    off += f;
  }
  return best;
}

double ControlSpace::dist(const Point& x, const Point& y) const {
  return std::sqrt(dist2(x, y).get_d());
}

Point ControlSpace::midpoint(const Point& x, const Point& y) {
  assert(x.size() == y.size());
  Point m(x.size());
  for (size_t k = 0; k < x.size(); ++k) m[k] = (x[k] + y[k]) / 2;
  return m;
}

}  // namespace siglab
