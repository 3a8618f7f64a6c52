#include "usigma/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace usigma {

UnitFunction to_unit(const TargetFunction& f) {
  if (!(f.a < f.b)) throw std::domain_error("to_unit: requires a < b");
  const double a = f.a, b = f.b;
  auto fn = f.f;
  UnitFunction g;
  g.g = [fn, a, b](double t) { return fn(a + (b - a) * t); };
  g.lipschitz = f.lipschitz * (b - a);
  return g;
}

double sikkema_chi() { return (4306.0 + 837.0 * std::sqrt(6.0)) / 5832.0; }

unsigned long long sikkema_n(double lipschitz_unit, double eps) {
  if (!(lipschitz_unit > 0)) throw std::domain_error("sikkema_n: Lipschitz constant must be positive");
  if (!(eps > 0)) throw std::domain_error("sikkema_n: tolerance must be positive");
  const double x = 2.0 * sikkema_chi() * lipschitz_unit / eps;
  const double n = std::ceil(x * x);
  if (!(n < 9.0e18)) throw std::overflow_error("sikkema_n: required degree exceeds 2^63");
  return static_cast<unsigned long long>(n);
}

namespace {

// Snap a binary64 sample to the simplest rational nearby.  The window is
// wide enough to absorb evaluator noise but is always clamped so that an
// exact rational sample with a moderate denominator beats every competitor
// (a rational that close to another one needs a huge partial quotient).
Rational snap_sample(double v, double window) {
  const double tight = 1e-13 * std::max(1.0, std::fabs(v));
  const double w = window > 0 ? std::min(window, tight) : tight;
  const Rational center = rational_from_double(v);
  const Rational half = rational_from_double(w);
  return simplest_rational_in(center - half, center + half);
}

}  // namespace

BernsteinExpansion bernstein_expand(const std::function<double(double)>& g,
                                    unsigned long long n, double snap_window) {
  if (n < 1) throw std::domain_error("bernstein: degree must be >= 1");
  if (n > kMaxBernsteinDegree)
    throw std::runtime_error("bernstein: degree too large for exact expansion; relax the tolerance");

  BernsteinExpansion out;
  out.samples.reserve(n + 1);
  for (unsigned long long k = 0; k <= n; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(n);
    const double v = g(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "bernstein: evaluator returned a non-finite value at t=" << x;
      throw std::invalid_argument(msg.str());
    }
    out.samples.push_back(snap_sample(v, snap_window));
  }

  // Common denominator, then a pure-integer forward-difference table:
  // the coefficient of x^j is C(n,j) * Delta^j g(0).
  Int common(1);
  for (const Rational& s : out.samples)
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), s.get_den().get_mpz_t());
  std::vector<Int> row;
  row.reserve(n + 1);
  for (const Rational& s : out.samples) row.push_back(s.get_num() * (common / s.get_den()));

  std::vector<Rational> coeffs(n + 1);
  Int binom(1);
  coeffs[0] = make_rational(row[0], common);
  for (unsigned long long j = 1; j <= n; ++j) {
    for (unsigned long long i = 0; i <= n - j; ++i) row[i] = row[i + 1] - row[i];
    binom *= static_cast<unsigned long>(n - j + 1);
    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(j));
    coeffs[j] = make_rational(binom * row[0], common);
  }
  out.poly = RationalPolynomial(std::move(coeffs));
  return out;
}

RationalPolynomial bernstein(const std::function<double(double)>& g,
                             unsigned long long n, double snap_window) {
  return bernstein_expand(g, n, snap_window).poly;
}

RationalPolynomial round_coefficients(const RationalPolynomial& poly, double eps) {
  if (!(eps > 0)) throw std::domain_error("round_coefficients: tolerance must be positive");
  if (poly.is_zero()) return poly;
  const auto& a = poly.coefficients();
  const Rational window = rational_from_double(eps) / Rational(2 * static_cast<unsigned long>(a.size()));
  std::vector<Rational> d;
  d.reserve(a.size());
  for (const Rational& ai : a) d.push_back(simplest_rational_in(ai - window, ai + window));
  return RationalPolynomial(std::move(d));
}

bool NeuronParams::theta_is_numeric() const {
  return placement.numeric_index.has_value() && std::isfinite(theta);
}

namespace {

void lipschitz_spot_check(const TargetFunction& f, std::vector<std::string>& warnings) {
  std::mt19937_64 rng(0x5eed5eedull);
  std::uniform_real_distribution<double> dist(f.a, f.b);
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng), y = dist(rng);
    const double fx = f.f(x), fy = f.f(y);
    if (!std::isfinite(fx) || !std::isfinite(fy)) continue;  // bernstein() reports these
    const double scale = std::max({1.0, std::fabs(fx), std::fabs(fy)});
    if (std::fabs(fx - fy) > f.lipschitz * std::fabs(x - y) * (1 + 1e-9) + 1e-12 * scale) {
      std::ostringstream msg;
      msg << "supplied Lipschitz constant " << f.lipschitz << " violated: |f(" << x << ") - f(" << y
          << ")| = " << std::fabs(fx - fy) << " > L|x - y| = " << f.lipschitz * std::fabs(x - y);
      warnings.push_back(msg.str());
      return;
    }
  }
}

double gap_from_log2_index(double log2m, const SigmaParams& params) {
  const double slack = std::min(0.5, params.lambda);
  double log_arg;
  if (log2m < 1000.0) {
    const double m = std::exp2(log2m);
    log_arg = std::log(2.0 * m * params.alpha + 1.0);
  } else {
    log_arg = std::log(2.0 * params.alpha) + log2m * M_LN2;  // -> inf saturates honestly
  }
  return slack / (1.0 + log_arg);
}

}  // namespace

NeuronParams solve(const TargetFunction& f, double eps, SigmaParams params,
                   unsigned long long bit_budget) {
  if (!(eps > 0)) throw std::domain_error("solve: tolerance must be positive");
  const UnitFunction unit = to_unit(f);

  NeuronParams out;
  out.epsilon = eps;
  out.sigma_params = params;
  out.a = f.a;
  out.b = f.b;
  out.lipschitz = f.lipschitz;
  lipschitz_spot_check(f, out.warnings);

  const unsigned long long n = sikkema_n(unit.lipschitz, eps);
  if (n > kMaxBernsteinDegree)
    throw std::runtime_error("solve: Bernstein degree " + std::to_string(n) +
                             " exceeds the exact-expansion cap; relax the tolerance");
  out.bernstein_degree = n;

  const double snap_window = eps / (8.0 * static_cast<double>(n + 1));
  BernsteinExpansion expansion = bernstein_expand(unit.g, n, snap_window);
  out.poly = round_coefficients(expansion.poly, 0.75 * eps);

  out.samples.reserve(expansion.samples.size());
  for (const Rational& s : expansion.samples) out.samples.push_back(to_double(s));
  out.residual.reserve(n + 1);
  for (unsigned long long j = 0; j <= n; ++j)
    out.residual.push_back(to_double(out.poly.coefficient(j) - expansion.poly.coefficient(j)));

  out.placement = index_of_polynomial(out.poly, bit_budget);
  if (out.placement.unit) out.tier = PlacementTier::unit;
  else if (out.placement.numeric_index) out.tier = PlacementTier::numeric;
  else if (out.placement.cf) out.tier = PlacementTier::symbolic;
  else out.tier = PlacementTier::astronomical;

  const double gap = gap_from_log2_index(out.placement.log2_index(), params);
  if (out.poly.is_constant()) {
    out.c1 = 1.0;
    out.c0 = to_double(out.poly.constant_term()) - 1.0 + gap / 2.0;
  } else {
    const PieceData piece = make_piece_data(out.poly);
    out.c1 = 3.0 * to_double(piece.span) / gap;
    out.c0 = to_double(piece.two_hi_minus_lo) - out.c1;
  }

  out.w = params.alpha / (f.b - f.a);
  if (out.placement.numeric_index) {
    const Rational alpha_r = rational_from_double(params.alpha);
    const Rational a_r = rational_from_double(f.a);
    const Rational b_r = rational_from_double(f.b);
    const Rational m_r(*out.placement.numeric_index);
    out.theta_exact = alpha_r * a_r / (b_r - a_r) + (1 - 2 * m_r) * alpha_r;
    out.theta = to_double(*out.theta_exact);
  } else {
    out.theta = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace usigma
