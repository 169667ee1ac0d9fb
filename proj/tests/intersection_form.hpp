// Test-support signature oracle computed along an independent route:
// middle-degree simplicial cochains, the front-face/back-face cup product
// evaluated against the fundamental class, and a self-contained dense
// rational elimination.  Nothing here touches the duality-operator
// pipeline, so agreement with signature_even is a genuine two-route check.
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "siglab/complexes.hpp"

namespace intersection {

using siglab::Q;
using Vec = std::vector<Q>;
using Mat = std::vector<Vec>;  // dense, row major

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row.
inline std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = (int)m.size(), cols = (int)m[0].size();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[(size_t)i][(size_t)c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[(size_t)r], m[(size_t)p]);
    const Q inv = m[(size_t)r][(size_t)c];
    for (auto& v : m[(size_t)r]) v /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[(size_t)i][(size_t)c] == 0) continue;
      const Q f = m[(size_t)i][(size_t)c];
      for (int j = 0; j < cols; ++j)
        m[(size_t)i][(size_t)j] -= f * m[(size_t)r][(size_t)j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis (as rows) of the null space of an m x cols matrix.
inline Mat kernel_basis(Mat m, int cols) {
  const std::vector<int> pivots = rref(m);
  std::vector<char> is_pivot((size_t)cols, 0);
  for (int c : pivots) is_pivot[(size_t)c] = 1;
  Mat basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[(size_t)c]) continue;
    Vec v((size_t)cols, Q(0));
    v[(size_t)c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[(size_t)pivots[r]] = -m[r][(size_t)c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Inertia (pos, neg) of a symmetric rational matrix by dense congruence;
// zero rows are simply skipped.
inline std::pair<int, int> symmetric_inertia(Mat g) {
  const int n = (int)g.size();
  std::vector<char> done((size_t)n, 0);
  int pos = 0, neg = 0;
  auto eliminate_pair = [&](int k, int j) {
    // congruence by the rows k and j of the current matrix
    const Vec rk = g[(size_t)k], rj = g[(size_t)j];
    const Q a = rk[(size_t)k], p = rk[(size_t)j], d = rj[(size_t)j];
    const Q det = a * d - p * p;
    for (int r = 0; r < n; ++r) {
      if (done[(size_t)r] || r == k || r == j) continue;
      const Q alpha = g[(size_t)r][(size_t)k], beta = g[(size_t)r][(size_t)j];
      const Q c1 = (alpha * d - beta * p) / det;
      const Q c2 = (beta * a - alpha * p) / det;
      if (c1 == 0 && c2 == 0) continue;
      for (int s = 0; s < n; ++s)
        g[(size_t)r][(size_t)s] -= c1 * rk[(size_t)s] + c2 * rj[(size_t)s];
    }
  };
  for (;;) {
    int k = -1;
    for (int i = 0; i < n && k < 0; ++i)
      if (!done[(size_t)i] && g[(size_t)i][(size_t)i] != 0) k = i;
    if (k >= 0) {  // 1x1 pivot
      const Q d = g[(size_t)k][(size_t)k];
      (d > 0 ? pos : neg) += 1;
      const Vec rk = g[(size_t)k];
      for (int r = 0; r < n; ++r) {
        if (done[(size_t)r] || r == k || g[(size_t)r][(size_t)k] == 0)
          continue;
        const Q f = g[(size_t)r][(size_t)k] / d;
        for (int s = 0; s < n; ++s)
          g[(size_t)r][(size_t)s] -= f * rk[(size_t)s];
      }
      done[(size_t)k] = 1;
      continue;
    }
    // all remaining diagonals vanish: any nonzero entry gives a
    // hyperbolic pair, one eigenvalue of each sign
    int i = -1, j = -1;
    for (int r = 0; r < n && i < 0; ++r) {
      if (done[(size_t)r]) continue;
      for (int c = 0; c < n && i < 0; ++c)
        if (!done[(size_t)c] && g[(size_t)r][(size_t)c] != 0) {
          i = r;
          j = c;
        }
    }
    if (i < 0) break;  // the rest is the radical
    eliminate_pair(i, j);
    pos += 1;
    neg += 1;
    done[(size_t)i] = done[(size_t)j] = 1;
  }
  return {pos, neg};
}

// Signature of the middle intersection form of a closed oriented complex
// of even dimension: cocycle representatives from the coboundary kernel,
// pairing <a, b> = sum over top simplices of sign * a(front) * b(back).
// Exact graded commutativity of the pairing is asserted along the way.
inline int cup_signature(const siglab::TypedComplex& cx) {
  const int n = cx.dim();
  if (n % 2) throw std::runtime_error("cup_signature: odd dimension");
  const int l = n / 2;
  const int nl = (int)cx.simplices(l).size();

  Mat z;
  if (n == 0) {  // every cochain is a cocycle
    z.assign((size_t)nl, Vec((size_t)nl, Q(0)));
    for (int i = 0; i < nl; ++i) z[(size_t)i][(size_t)i] = 1;
  } else {
    const auto& hi = cx.simplices(l + 1);
    Mat delta(hi.size(), Vec((size_t)nl, Q(0)));
    for (size_t t = 0; t < hi.size(); ++t) {
      const std::vector<int>& v = hi[t];
      std::vector<int> face(v.size() - 1);
      for (size_t i = 0; i < v.size(); ++i) {
        size_t w = 0;
        for (size_t j = 0; j < v.size(); ++j)
          if (j != i) face[w++] = v[j];
        delta[t][(size_t)cx.simplex_index(face)] += (i % 2 ? Q(-1) : Q(1));
      }
    }
    z = kernel_basis(std::move(delta), nl);
  }

  Mat g(z.size(), Vec(z.size(), Q(0)));
  for (const auto& [t, sgn] : cx.top()) {
    const std::vector<int>& v = cx.simplices(n)[(size_t)t];
    const std::vector<int> front(v.begin(), v.begin() + l + 1);
    const std::vector<int> back(v.begin() + l, v.end());
    const int fi = cx.simplex_index(front);
    const int bi = cx.simplex_index(back);
    for (size_t a = 0; a < z.size(); ++a) {
      if (z[a][(size_t)fi] == 0) continue;
      for (size_t b = 0; b < z.size(); ++b)
        g[a][b] += Q(sgn) * z[a][(size_t)fi] * z[b][(size_t)bi];
    }
  }

  // cocycles paired against a cycle commute exactly, in the graded sense
  for (size_t a = 0; a < g.size(); ++a)
    for (size_t b = a; b < g.size(); ++b) {
      const Q flip = (l % 2) ? -g[b][a] : g[b][a];
      if (g[a][b] != flip)
        throw std::runtime_error("cup_signature: pairing not graded-symmetric");
    }
  if (l % 2) return 0;  // antisymmetric form

  auto [pos, neg] = symmetric_inertia(std::move(g));
  return pos - neg;
}

}  // namespace intersection
