#pragma once

#include "usigma/continued_fraction.hpp"
#include "usigma/polynomial.hpp"

#include <optional>
#include <vector>

namespace usigma {

inline constexpr unsigned long long kDefaultBitBudget = 1'000'000;

// Stern's diatomic sequence a_n (a_1 = 1, a_{2n} = a_n, a_{2n+1} = a_n + a_{n+1}),
// computed iteratively over the binary digits of n.  Throws for n < 1.
Int stern_diatomic(const Int& n);

// n-th Calkin-Wilf rational q_n = a_n / a_{n+1}, computed through the
// binary-run route: the run lengths of n's binary code read as a continued
// fraction.  Agrees with the Stern-pair route.  Throws for n < 1.
Rational calkin_wilf(const Int& n);

// Canonical continued fraction of q_n (runs merged into canonical form).
ContinuedFraction calkin_wilf_cf(const Int& n);

// Enumeration of all rationals: r_0 = 0, r_{2n} = q_n, r_{2n-1} = -q_n.
Rational rational_at(const Int& n);

// Position p_q of a positive rational in the Calkin-Wilf sequence: binary
// word of the even-variant continued-fraction runs.  Exact inverse of
// calkin_wilf.  Throws std::domain_error for q <= 0 and std::overflow_error
// when the word would exceed kMaxMaterializeBits.
Int position_of_positive(const Rational& q);

// Position p_r in the all-rationals enumeration: 0, 2 p_q(r), 2 p_q(-r) - 1.
Int position_of(const Rational& r);

// Sum of the canonical continued-fraction terms of a positive rational.
// Equals the bit length of position_of_positive(q) without materializing it.
Int cf_term_sum_of(const Rational& q);

// Hard cap on any single materialized position (bits).
inline constexpr unsigned long long kMaxMaterializeBits = 1ull << 26;

// Where a polynomial sits in the enumeration u_1, u_2, ...  For m >= 2 the
// defining datum is the continued fraction of q_{m-1}; m itself is an
// optional extra.  Three regimes:
//   - cf present, numeric_index present: m fits the bit budget;
//   - cf present, numeric_index absent: m's bit count (position_bits) is
//     known exactly but m itself is too wide to write down;
//   - cf absent: even the continued-fraction terms are too wide; only the
//     per-term bit lengths survive.
struct Placement {
  bool unit = false;                     // m == 1 (the zero polynomial)
  std::optional<ContinuedFraction> cf;   // CF of q_{m-1}
  std::vector<Int> term_bits;            // bit length of each CF term
  std::optional<Int> position_bits;      // bit length of p_q(q_{m-1}) = sum of CF terms
  std::optional<Int> numeric_index;      // m, iff position_bits <= budget

  bool materialized_cf() const { return unit || cf.has_value(); }
  // log2(m); approximate in the symbolic regimes, +inf when beyond double range.
  double log2_index() const;
};

// u_m: the m-th polynomial with rational coefficients (u_1 = 0).  The
// Placement overload works from the continued fraction directly and never
// materializes m; it throws std::invalid_argument when the placement's CF
// is not materialized.
RationalPolynomial polynomial_at(const Int& m);
RationalPolynomial polynomial_at(const Placement& placement);

// Placement for a concrete index m >= 1.
Placement placement_of_index(const Int& m);

// Inverse of polynomial_at: the placement of p in the enumeration.
// Throws std::invalid_argument if a raw polynomial carries a trailing zero
// leading coefficient.
Placement index_of_polynomial(const RationalPolynomial& p,
                              unsigned long long bit_budget = kDefaultBitBudget);

}  // namespace usigma
