#pragma once

#include "usigma/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace usigma {

// Univariate polynomial with exact rational coefficients, stored in
// ascending degree order.  A nonzero polynomial has a nonzero leading
// coefficient; the zero polynomial has an empty coefficient list.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients);

  // Skips trailing-zero trimming; lets tests feed malformed inputs to
  // validation paths.
  static RationalPolynomial raw(std::vector<Rational> coefficients);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  // Coefficient of t^i; zero beyond the stored degree.
  Rational coefficient(std::size_t i) const;

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  Rational constant_term() const;   // value at 0
  Rational sum_coefficients() const;  // value at 1

  std::string str(char var = 't') const;

  bool operator==(const RationalPolynomial&) const = default;

 private:
  std::vector<Rational> coeffs_;
};

}  // namespace usigma
