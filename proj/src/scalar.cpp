#include "siglab/scalar.hpp"

#include <ostream>
#include <sstream>

namespace siglab {

std::string GQ::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

size_t GQ::height() const {
  auto bits = [](const Q& q) {
    return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
  };
  return bits(re) + bits(im);
}

std::ostream& operator<<(std::ostream& os, const GQ& z) {
  auto imag = [&os](const Q& v) -> std::ostream& {
    if (v == 1) return os << "i";
    if (v == -1) return os << "-i";
    return os << v << "i";
  };
  if (z.im == 0) return os << z.re;
  if (z.re == 0) return imag(z.im);
  os << z.re;
  if (z.im > 0) os << "+";
  return imag(z.im);
}

bool sqrt_leq_sum(const Q& x, const Q& a, const Q& b) {
  // sqrt(x) <= sqrt(a)+sqrt(b)  <=>  x <= a+b  or  (x-a-b)^2 <= 4ab
  if (x <= a + b) return true;
  Q d = x - a - b;
  return d * d <= 4 * a * b;
}

}  // namespace siglab
