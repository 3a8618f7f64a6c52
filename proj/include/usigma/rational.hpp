#pragma once

#include <gmpxx.h>

#include <string>

namespace usigma {

// Arbitrary-precision signed integer.
using Int = mpz_class;

// Arbitrary-precision rational, kept in lowest terms with positive
// denominator.  All gmpxx arithmetic preserves canonical form; anything
// that builds a Rational from raw parts must go through make_rational().
using Rational = mpq_class;

// num/den reduced to lowest terms.  Throws std::domain_error if den == 0.
Rational make_rational(Int num, Int den);

// Exact value of a finite double (binary expansion, no rounding).
Rational rational_from_double(double v);

double to_double(const Rational& q);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Number of bits of |n|; 0 for n == 0.
Int bit_length(const Int& n);

// log2(|n|) as a double, exact to one ulp even for huge n.  -inf for 0.
double log2_of(const Int& n);

}  // namespace usigma
