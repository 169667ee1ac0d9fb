#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace siglab {

/// Exact rational scalar.
using Q = mpq_class;

inline double to_double(const Q& q) { return q.get_d(); }

/// Gaussian rational a + bi.  All chain-level algebra in the library is
/// exact over this field; floating point enters only for norms, singular
/// values and trigonometric path parameters.
struct GQ {
  Q re, im;

  GQ() : re(0), im(0) {}
  GQ(long r) : re(r), im(0) {}
  GQ(const Q& r) : re(r), im(0) {}
  GQ(Q r, Q i) : re(std::move(r)), im(std::move(i)) {}

  static GQ i() { return GQ(Q(0), Q(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GQ conj() const { return GQ(re, -im); }

  GQ operator-() const { return GQ(-re, -im); }
  GQ& operator+=(const GQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GQ& operator-=(const GQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GQ& operator*=(const GQ& o) {
    Q r = re * o.re - im * o.im;
    Q i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GQ operator+(GQ a, const GQ& b) { return a += b; }
  friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
  friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
  friend bool operator==(const GQ& a, const GQ& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

  /// |z|^2, exact.
  Q norm2() const { return re * re + im * im; }

  GQ inv() const {
    Q n = norm2();
    return GQ(re / n, -im / n);
  }
  friend GQ operator/(GQ a, const GQ& b) { return a * b.inv(); }

  std::complex<double> to_complex() const {
    return {re.get_d(), im.get_d()};
  }

  /// "3/4+1/2i" style rendering, used in reports and dumps.
  std::string str() const;

  /// Rough size measure (bit length of numerators/denominators); used by
  /// pivot selection heuristics to keep exact eliminations small.
  size_t height() const;
};

std::ostream& operator<<(std::ostream& os, const GQ& z);

/// i^k for k mod 4; the sign bookkeeping of duality operators lives in
/// these powers.
inline GQ i_pow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return GQ(1);
    case 1: return GQ(Q(0), Q(1));
    case 2: return GQ(-1);
    default: return GQ(Q(0), Q(-1));
  }
}

inline int sign_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

/// Exact comparison sqrt(x) <= sqrt(a) + sqrt(b) for nonnegative
/// rationals, used to verify triangle-inequality style propagation bounds
/// without leaving exact arithmetic.
bool sqrt_leq_sum(const Q& x, const Q& a, const Q& b);

/// Exact comparison sqrt(x) <= m * sqrt(c) (m a nonnegative integer).
inline bool sqrt_leq_scaled(const Q& x, long m, const Q& c) {
  return x <= Q(m) * Q(m) * c;
}

}  // namespace siglab
