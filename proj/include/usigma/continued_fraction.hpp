#pragma once

#include "usigma/rational.hpp"

#include <vector>

namespace usigma {

// Finite continued fraction [n0; n1, ..., nk] with n0 >= 0 and ni >= 1 for
// i >= 1.  Value is n0 + 1/(n1 + 1/(... + 1/nk)).  The canonical form of a
// positive rational has nk >= 2, except single-term fractions ([n0] encodes
// the integer n0, so [1] is the canonical form of 1).  cf_even() produces
// the value-preserving variant whose index k is even; its last term may be 1.
struct ContinuedFraction {
  std::vector<Int> terms;

  Int term_sum() const;
  bool operator==(const ContinuedFraction&) const = default;
};

// Canonical continued fraction of a positive rational (Euclidean algorithm).
// Throws std::domain_error for q <= 0.
ContinuedFraction cf_from_rational(const Rational& q);

// Exact value of a continued fraction.  Throws std::invalid_argument on a
// malformed term sequence.
Rational rational_from_cf(const ContinuedFraction& cf);

// Value-preserving rewrite to an even index k (odd term count), applying
// [..., n] <-> [..., n-1, 1] exactly when needed.
ContinuedFraction cf_even(const ContinuedFraction& cf);

// The rational in [lo, hi] minimizing the sum of its continued-fraction
// terms, ties broken toward smaller denominator then smaller numerator.
// Stern-Brocot style descent; deterministic; lo == hi returns lo.
// Throws std::invalid_argument if lo > hi.
Rational simplest_rational_in(const Rational& lo, const Rational& hi);

}  // namespace usigma
