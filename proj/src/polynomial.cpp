#include "usigma/polynomial.hpp"

#include <utility>

namespace usigma {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPolynomial RationalPolynomial::raw(std::vector<Rational> coefficients) {
  RationalPolynomial p;
  p.coeffs_ = std::move(coefficients);
  return p;
}

Rational RationalPolynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational RationalPolynomial::eval(const Rational& x) const {
  Rational acc(0);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

double RationalPolynomial::eval(double x) const {
  double acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + to_double(coeffs_[i]);
  return acc;
}

Rational RationalPolynomial::constant_term() const {
  return coeffs_.empty() ? Rational(0) : coeffs_.front();
}

Rational RationalPolynomial::sum_coefficients() const {
  Rational sum(0);
  for (const Rational& c : coeffs_) sum += c;
  return sum;
}

std::string RationalPolynomial::str(char var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    const bool unit = (mag == 1) && i > 0;
    if (!unit) out += to_string(mag);
    if (i > 0) {
      if (!unit) out += '*';
      out += var;
      if (i > 1) out += '^' + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace usigma
