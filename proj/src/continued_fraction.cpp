#include "usigma/continued_fraction.hpp"

#include <stdexcept>
#include <utility>

namespace usigma {

Int ContinuedFraction::term_sum() const {
  Int sum = 0;
  for (const Int& t : terms) sum += t;
  return sum;
}

ContinuedFraction cf_from_rational(const Rational& q) {
  if (q <= 0) throw std::domain_error("cf_from_rational: input must be positive");
  ContinuedFraction cf;
  Int num = q.get_num();
  Int den = q.get_den();
  while (den != 0) {
    Int quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    cf.terms.push_back(std::move(quot));
    num = std::move(den);
    den = std::move(rem);
  }
  return cf;
}

static void check_cf(const ContinuedFraction& cf) {
  if (cf.terms.empty()) throw std::invalid_argument("continued fraction: empty term list");
  if (cf.terms.front() < 0) throw std::invalid_argument("continued fraction: first term must be >= 0");
  for (std::size_t i = 1; i < cf.terms.size(); ++i)
    if (cf.terms[i] < 1) throw std::invalid_argument("continued fraction: terms after the first must be >= 1");
}

Rational rational_from_cf(const ContinuedFraction& cf) {
  check_cf(cf);
  Rational value(cf.terms.back());
  for (std::size_t i = cf.terms.size() - 1; i-- > 0;) {
    value = Rational(cf.terms[i]) + 1 / value;
  }
  return value;
}

ContinuedFraction cf_even(const ContinuedFraction& cf) {
  check_cf(cf);
  ContinuedFraction out = cf;
  if ((out.terms.size() - 1) % 2 == 0) return out;
  if (out.terms.back() == 1) {
    // [..., n, 1] -> [..., n+1]
    out.terms.pop_back();
    out.terms.back() += 1;
  } else {
    // [..., n] -> [..., n-1, 1]
    out.terms.back() -= 1;
    out.terms.push_back(1);
  }
  return out;
}

namespace {

// 0 < lo <= hi.  The integer-part recursion terminates because each level
// consumes one term of the answer's continued fraction.
Rational simplest_positive(const Rational& lo, const Rational& hi) {
  Int a;
  mpz_fdiv_q(a.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
  if (lo == a) return lo;
  Rational next(a + 1);
  if (next <= hi) return next;
  // Same integer part on both ends; recurse on the reciprocal tail.
  Rational sub = simplest_positive(1 / (hi - a), 1 / (lo - a));
  return Rational(a) + 1 / sub;
}

}  // namespace

Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_rational_in: lo > hi");
  if (lo <= 0 && 0 <= hi) return Rational(0);
  if (lo > 0) return simplest_positive(lo, hi);
  return -simplest_positive(-hi, -lo);
}

}  // namespace usigma
