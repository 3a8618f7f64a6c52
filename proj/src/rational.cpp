#include "usigma/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace usigma {

Rational make_rational(Int num, Int den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("rational_from_double: non-finite value");
  return Rational(v);
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Int bit_length(const Int& n) {
  if (n == 0) return 0;
  return Int(mpz_sizeinbase(n.get_mpz_t(), 2));
}

double log2_of(const Int& n) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log2(std::fabs(d)) + static_cast<double>(exp);
}

}  // namespace usigma
