#pragma once

#include "usigma/enumeration.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace usigma {

struct SigmaParams {
  double alpha = 1.0;   // interval scale, > 0
  double lambda = 0.5;  // monotonicity slack, > 0
};

enum class Precision { binary64, extended };

// e^{-1/t} for t > 0, else 0.  Smooth, increasing, flat to all orders at 0.
double bump(double t);

// Smooth transition: 1 for t <= a, 0 for t >= b, strictly inside (0,1)
// between.  Throws std::invalid_argument unless a < b.
double transition(double a, double b, double t);

// Exact, precision-independent data of the m-th polynomial strip.
struct PieceData {
  RationalPolynomial u;
  bool constant = false;
  Rational range_lo;            // A1 <= u(t) on [0,1]
  Rational range_hi;            // A2 >= u(t) on [0,1]
  Rational span;                // A2 - A1 (> 0 when not constant)
  Rational two_hi_minus_lo;     // 2 A2 - A1
  Rational value_at_0;
  Rational value_at_1;
  Rational delta_ratio_lower;   // delta / alpha for the strip's right transition
  Rational delta_ratio_upper;   // delta-bar / alpha when this strip closes a transition
  std::vector<double> coeffs_d;
};

PieceData make_piece_data(const RationalPolynomial& u);

// Numeric view of one strip's affine map (binary64).
struct PieceCoefficients {
  Int m;
  bool is_constant = false;
  double A1 = 0, A2 = 0;
  double M = 0;             // h((2m+1) alpha)
  double one_minus_M = 0;   // carried separately; M itself loses precision near 1
  double a = 0, b = 0;      // sigma = a + b * u on the strip (b = 0 when constant)
  double piece_value = 0;   // (1+M)/2 when constant
};

// The universal activation.  Immutable after construction; eval is pure.
// In extended mode every transcendental step runs at >= 100-bit precision
// and the result is rounded to double on return.
class Sigma {
 public:
  explicit Sigma(SigmaParams params, Precision precision = Precision::binary64);

  double eval(double t) const;
  double operator()(double t) const { return eval(t); }

  // Sign of sigma(t1) - sigma(t2) at the instance precision.  In extended
  // mode this resolves orderings that vanish in the rounded double results
  // (tail increments near alpha sit far below one ulp of the value).
  int compare(double t1, double t2) const;

  // The monotone floor 1 - min{1/2, lambda} / (1 + log(t - alpha + 1)).
  // Domain [alpha, inf); throws std::domain_error below it.
  double h(double t) const;

  const PieceData& piece_data(const Int& m) const;
  PieceCoefficients piece_coefficients(const Int& m) const;

  // Transition-window widths for the interval [2 m alpha, (2m+1) alpha].
  double delta_lower(const Int& m) const;
  double delta_upper(const Int& m) const;

  // Formula-level evaluators, exposed so junction agreement is testable
  // without relying on floating-point neighbourhoods.
  double eval_polynomial_piece(const Int& m, double t) const;  // t in [(2m-1)a, 2ma]
  double eval_transition(const Int& m, double t) const;        // t in [2ma, (2m+1)a]
  double eval_tail(double t) const;                            // t <= alpha

  const SigmaParams& params() const { return params_; }
  Precision precision() const { return precision_; }

 private:
  template <class Real> Real eval_impl(double t) const;
  template <class Real> Real gap_impl(const Int& m) const;  // 1 - h((2m+1) alpha)
  template <class Real> Real strip_value(const Int& m, Real local) const;
  template <class Real> Real strip_endpoint(const Int& m, bool right) const;
  template <class Real> Real piece_impl(const Int& m, double t) const;
  template <class Real> Real transition_impl(const Int& m, double t) const;
  template <class Real> Real tail_impl(double t) const;

  SigmaParams params_;
  Precision precision_;
  mutable std::map<Int, PieceData> cache_;
  mutable std::mutex cache_mutex_;
};

}  // namespace usigma
