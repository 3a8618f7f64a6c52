#pragma once

#include "usigma/sigma.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace usigma {

// A Lipschitz target f on [a, b].  The constant is caller-supplied and only
// spot-checked (a violated claim produces a warning, not an error).
struct TargetFunction {
  std::function<double(double)> f;
  double a = 0;
  double b = 1;
  double lipschitz = 1;
};

struct UnitFunction {
  std::function<double(double)> g;  // g(t) = f(a + (b-a) t) on [0, 1]
  double lipschitz = 1;             // L (b - a)
};

// Rescale to the unit interval.  Throws std::domain_error unless a < b.
UnitFunction to_unit(const TargetFunction& f);

// Sharp constant in Sikkema's Bernstein bound, (4306 + 837 sqrt 6) / 5832.
double sikkema_chi();

// Smallest guaranteed Bernstein degree: ceil((2 chi L1 / eps)^2).
unsigned long long sikkema_n(double lipschitz_unit, double eps);

// Degrees beyond this make the exact monomial expansion infeasible.
inline constexpr unsigned long long kMaxBernsteinDegree = 10'000;

struct BernsteinExpansion {
  std::vector<Rational> samples;  // g(k/n) snapped to exact rationals
  RationalPolynomial poly;        // B_n in the monomial basis, exact
};

// Exact monomial form of the n-th Bernstein polynomial of g.  Samples are
// evaluated in binary64 and snapped to the simplest rational within
// snap_window (0 uses the float-noise window alone; anything larger is
// clamped so exact rational samples always snap to themselves).
// Throws std::invalid_argument if the evaluator returns a non-finite value.
BernsteinExpansion bernstein_expand(const std::function<double(double)>& g,
                                    unsigned long long n, double snap_window = 0);

RationalPolynomial bernstein(const std::function<double(double)>& g,
                             unsigned long long n, double snap_window = 0);

// Per-coefficient simplest-rational rounding with total budget eps/2:
// each coefficient moves by at most eps / (2 (k+1)).
RationalPolynomial round_coefficients(const RationalPolynomial& poly, double eps);

enum class PlacementTier {
  unit,          // m == 1
  numeric,       // m materialized
  symbolic,      // CF of q_{m-1} materialized, m beyond the bit budget
  astronomical,  // even the CF terms exceed the materialization cap
};

// One-hidden-neuron parameters: f(x) ~ c0 + c1 sigma(w x - theta).
struct NeuronParams {
  double c0 = 0;
  double c1 = 1;
  double w = 1;
  double theta = 0;                    // NaN when not numerically representable
  std::optional<Rational> theta_exact; // alpha a/(b-a) + (1-2m) alpha, numeric tier only
  Placement placement;
  PlacementTier tier = PlacementTier::unit;

  RationalPolynomial poly;             // p = u_m
  unsigned long long bernstein_degree = 0;
  std::vector<double> samples;         // Bernstein samples (double view)
  std::vector<double> residual;        // p - B_n coefficients (double view)

  double epsilon = 0;
  SigmaParams sigma_params;
  double a = 0, b = 1;
  double lipschitz = 1;
  std::vector<std::string> warnings;

  bool theta_is_numeric() const;
};

// The full pipeline: rescale, Bernstein degree, exact expansion, rational
// rounding, placement, and the affine read-out.  Guarantees
// sup |f - network| < eps on [a, b]; the placement may be symbolic (the
// network stays evaluable through the polynomial identity).
NeuronParams solve(const TargetFunction& f, double eps, SigmaParams params = {},
                   unsigned long long bit_budget = kDefaultBitBudget);

}  // namespace usigma
