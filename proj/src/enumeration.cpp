#include "usigma/enumeration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace usigma {

namespace {

// Run lengths of n's binary code starting from the least significant digit:
// f_0 ones (possibly zero), f_1 zeros, f_2 ones, ...  The most significant
// run is always a run of ones, so the count of runs is odd.
std::vector<unsigned long> binary_runs(const Int& n) {
  std::vector<unsigned long> runs;
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  int expect = 1;
  unsigned long count = 0;
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(n.get_mpz_t(), i) == expect) {
      ++count;
    } else {
      runs.push_back(count);
      expect ^= 1;
      count = 1;
    }
  }
  runs.push_back(count);
  return runs;
}

ContinuedFraction cf_from_runs(const std::vector<unsigned long>& runs) {
  ContinuedFraction cf;
  cf.terms.reserve(runs.size());
  for (unsigned long r : runs) cf.terms.emplace_back(r);
  return cf;
}

void canonicalize_cf(ContinuedFraction& cf) {
  if (cf.terms.size() > 1 && cf.terms.back() == 1) {
    cf.terms.pop_back();
    cf.terms.back() += 1;
  }
}

unsigned long to_shift(const Int& t) {
  if (t < 0 || !t.fits_ulong_p()) throw std::overflow_error("continued-fraction term too large to materialize");
  return t.get_ui();
}

// Binary word of the even-variant runs [f_0; f_1, ..., f_k]: f_k ones,
// f_{k-1} zeros, ..., f_0 ones.
Int word_from_even_cf(const ContinuedFraction& even) {
  Int word = 0;
  for (std::size_t i = even.terms.size(); i-- > 0;) {
    const unsigned long width = to_shift(even.terms[i]);
    word <<= width;
    if (i % 2 == 0 && width > 0) {
      Int mask = 1;
      mask <<= width;
      word |= mask - 1;
    }
  }
  return word;
}

}  // namespace

Int stern_diatomic(const Int& n) {
  if (n < 1) throw std::domain_error("stern_diatomic: index must be >= 1");
  // Walk the binary digits of n from the most significant end, carrying the
  // pair (a_m, a_{m+1}) for the prefix m.
  Int u = 1, v = 1;  // (a_1, a_2)
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    if (mpz_tstbit(n.get_mpz_t(), i)) {
      u += v;  // m -> 2m+1: (a_{2m+1}, a_{2m+2}) = (a_m + a_{m+1}, a_{m+1})
    } else {
      v += u;  // m -> 2m:   (a_{2m}, a_{2m+1})   = (a_m, a_m + a_{m+1})
    }
  }
  return u;
}

Rational calkin_wilf(const Int& n) {
  if (n < 1) throw std::domain_error("calkin_wilf: index must be >= 1");
  return rational_from_cf(cf_from_runs(binary_runs(n)));
}

ContinuedFraction calkin_wilf_cf(const Int& n) {
  if (n < 1) throw std::domain_error("calkin_wilf_cf: index must be >= 1");
  ContinuedFraction cf = cf_from_runs(binary_runs(n));
  canonicalize_cf(cf);
  return cf;
}

Rational rational_at(const Int& n) {
  if (n < 0) throw std::domain_error("rational_at: index must be >= 0");
  if (n == 0) return Rational(0);
  if (mpz_even_p(n.get_mpz_t())) return calkin_wilf(n / 2);
  return -calkin_wilf((n + 1) / 2);
}

Int position_of_positive(const Rational& q) {
  if (q <= 0) throw std::domain_error("position_of_positive: input must be positive");
  const ContinuedFraction even = cf_even(cf_from_rational(q));
  if (even.term_sum() > static_cast<unsigned long>(kMaxMaterializeBits))
    throw std::overflow_error("position_of_positive: position exceeds materialization cap");
  return word_from_even_cf(even);
}

Int position_of(const Rational& r) {
  if (r == 0) return 0;
  if (r > 0) return 2 * position_of_positive(r);
  return 2 * position_of_positive(-r) - 1;
}

Int cf_term_sum_of(const Rational& q) {
  return cf_from_rational(q).term_sum();
}

double Placement::log2_index() const {
  if (unit) return 0.0;
  if (numeric_index) return log2_of(*numeric_index);
  if (cf) {
    // The position's binary word starts (MSB side) with the last run of
    // ones; reconstruct up to 64 leading bits for the mantissa.
    const ContinuedFraction even = cf_even(*cf);
    unsigned long long lead = 0;
    int collected = 0;
    for (std::size_t i = even.terms.size(); i-- > 0 && collected < 64;) {
      unsigned long width = even.terms[i].fits_ulong_p() ? even.terms[i].get_ui() : 64;
      while (width-- > 0 && collected < 64) {
        lead = (lead << 1) | (i % 2 == 0 ? 1u : 0u);
        ++collected;
      }
    }
    const double bits = position_bits ? to_double(Rational(*position_bits)) :
                                        std::numeric_limits<double>::infinity();
    if (!std::isfinite(bits)) return bits;
    return std::log2(static_cast<double>(lead)) + (bits - collected);
  }
  // CF terms not materialized: term i has term_bits[i] bits, so it is about
  // 1.5 * 2^(bits-1); the position's bit count is the sum of the terms.
  double sum = 0;
  for (const Int& tb : term_bits) {
    const double b = to_double(Rational(tb));
    sum += 1.5 * std::exp2(b - 1.0);
    if (!std::isfinite(sum)) break;
  }
  return sum;  // log2(m) ~ bit count of m
}

RationalPolynomial polynomial_at(const Int& m) {
  if (m < 1) throw std::domain_error("polynomial_at: index must be >= 1");
  if (m == 1) return RationalPolynomial{};
  const ContinuedFraction cf = calkin_wilf_cf(m - 1);
  std::vector<Rational> coeffs;
  coeffs.reserve(cf.terms.size());
  coeffs.push_back(rational_at(cf.terms[0]));
  for (std::size_t i = 1; i < cf.terms.size(); ++i)
    coeffs.push_back(rational_at(cf.terms[i] - 1));
  return RationalPolynomial(std::move(coeffs));
}

RationalPolynomial polynomial_at(const Placement& placement) {
  if (placement.unit) return RationalPolynomial{};
  if (!placement.cf)
    throw std::invalid_argument("polynomial_at: placement's continued fraction is not materialized");
  const ContinuedFraction& cf = *placement.cf;
  std::vector<Rational> coeffs;
  coeffs.reserve(cf.terms.size());
  coeffs.push_back(rational_at(cf.terms[0]));
  for (std::size_t i = 1; i < cf.terms.size(); ++i)
    coeffs.push_back(rational_at(cf.terms[i] - 1));
  return RationalPolynomial(std::move(coeffs));
}

Placement placement_of_index(const Int& m) {
  if (m < 1) throw std::domain_error("placement_of_index: index must be >= 1");
  Placement pl;
  if (m == 1) {
    pl.unit = true;
    pl.numeric_index = 1;
    return pl;
  }
  pl.cf = calkin_wilf_cf(m - 1);
  pl.position_bits = pl.cf->term_sum();
  pl.numeric_index = m;
  for (const Int& t : pl.cf->terms) pl.term_bits.push_back(bit_length(t));
  return pl;
}

Placement index_of_polynomial(const RationalPolynomial& p, unsigned long long bit_budget) {
  Placement pl;
  if (p.is_zero()) {
    pl.unit = true;
    pl.numeric_index = 1;
    return pl;
  }
  const std::vector<Rational>& d = p.coefficients();
  if (d.back() == 0)
    throw std::invalid_argument("index_of_polynomial: malformed polynomial (zero leading coefficient)");

  // Per-coefficient position widths, computable without materializing the
  // positions themselves: bits(p_r(d)) = cf_term_sum(|d|) + 1 for d != 0.
  Int total_width = 0;
  std::vector<Int> widths;
  widths.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    Int w;
    if (d[i] == 0) {
      w = (i == 0) ? 0 : 1;  // position 0; terms after the first store n_i + 1 = 1
    } else {
      w = cf_term_sum_of(d[i] > 0 ? d[i] : Rational(-d[i])) + 1;
    }
    total_width += w;
    pl.term_bits.push_back(std::move(w));
  }

  if (total_width <= static_cast<unsigned long>(kMaxMaterializeBits)) {
    ContinuedFraction cf;
    cf.terms.reserve(d.size());
    cf.terms.push_back(position_of(d[0]));
    for (std::size_t i = 1; i < d.size(); ++i) cf.terms.push_back(position_of(d[i]) + 1);
    pl.position_bits = cf.term_sum();
    if (*pl.position_bits <= Int(static_cast<unsigned long>(bit_budget))) {
      pl.numeric_index = word_from_even_cf(cf_even(cf)) + 1;
    }
    // Recompute exact term widths from the materialized terms.
    pl.term_bits.clear();
    for (const Int& t : cf.terms) pl.term_bits.push_back(bit_length(t));
    pl.cf = std::move(cf);
  }
  return pl;
}

}  // namespace usigma
