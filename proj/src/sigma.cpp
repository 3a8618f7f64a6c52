#include "usigma/sigma.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace usigma {

namespace {

// ~166-bit significand; every transcendental step of extended mode runs here.
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50>,
                                               boost::multiprecision::et_off>;

template <class Real>
Real to_real(const Rational& q);

template <>
double to_real<double>(const Rational& q) {
  return to_double(q);
}

template <>
BigFloat to_real<BigFloat>(const Rational& q) {
  BigFloat r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

template <class Real>
Real int_to_real(const Int& n);

template <>
double int_to_real<double>(const Int& n) {
  return n.get_d();
}

template <>
BigFloat int_to_real<BigFloat>(const Int& n) {
  BigFloat r;
  mpfr_set_z(r.backend().data(), n.get_mpz_t(), MPFR_RNDN);
  return r;
}

template <class Real>
Real bump_impl(const Real& t) {
  using std::exp;
  if (t <= 0) return Real(0);
  return exp(Real(-1) / t);
}

template <class Real>
Real beta_impl(const Real& a, const Real& b, const Real& t) {
  const Real up = bump_impl(Real(b - t));
  const Real down = bump_impl(Real(t - a));
  return up / (up + down);
}

}  // namespace

double bump(double t) { return bump_impl<double>(t); }

double transition(double a, double b, double t) {
  if (!(a < b)) throw std::invalid_argument("transition: requires a < b");
  return beta_impl<double>(a, b, t);
}

PieceData make_piece_data(const RationalPolynomial& u) {
  PieceData d;
  d.u = u;
  d.constant = u.is_constant();
  const auto& c = u.coefficients();
  Rational lo = u.constant_term();
  Rational hi = lo;
  Rational deriv_right(0), deriv_left(0);
  Rational pow_right(1), pow_left(1);
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] < 0) lo += c[i]; else hi += c[i];
    const Rational mag = c[i] < 0 ? Rational(-c[i]) : c[i];
    deriv_right += Rational(static_cast<unsigned long>(i)) * mag * pow_right;
    deriv_left += Rational(static_cast<unsigned long>(i)) * mag * pow_left;
    pow_right *= Rational(3, 2);
    pow_left *= Rational(1, 2);
  }
  d.range_lo = lo;
  d.range_hi = hi;
  d.span = hi - lo;
  d.two_hi_minus_lo = 2 * hi - lo;
  d.value_at_0 = u.constant_term();
  d.value_at_1 = u.sum_coefficients();
  const Rational half(1, 2);
  if (d.constant || deriv_right == 0) {
    d.delta_ratio_lower = half;
  } else {
    const Rational r = d.span / (2 * deriv_right);
    d.delta_ratio_lower = r < half ? r : half;
  }
  if (d.constant || deriv_left == 0) {
    d.delta_ratio_upper = half;
  } else {
    const Rational r = d.span / (2 * deriv_left);
    d.delta_ratio_upper = r < half ? r : half;
  }
  d.coeffs_d.reserve(c.size());
  for (const Rational& ci : c) d.coeffs_d.push_back(to_double(ci));
  return d;
}

Sigma::Sigma(SigmaParams params, Precision precision)
    : params_(params), precision_(precision) {
  if (!(params_.alpha > 0) || !std::isfinite(params_.alpha))
    throw std::invalid_argument("sigma: alpha must be positive and finite");
  if (!(params_.lambda > 0) || !std::isfinite(params_.lambda))
    throw std::invalid_argument("sigma: lambda must be positive and finite");
}

const PieceData& Sigma::piece_data(const Int& m) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
  }
  PieceData data = make_piece_data(polynomial_at(m));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(m, std::move(data)).first->second;
}

template <class Real>
Real Sigma::gap_impl(const Int& m) const {
  using std::log;
  const Real slack = Real(std::min(0.5, params_.lambda));
  if constexpr (std::is_same_v<Real, double>) {
    const double md = m.get_d();
    const double arg = 2.0 * md * params_.alpha + 1.0;
    double log_arg;
    if (std::isfinite(arg)) {
      log_arg = std::log(arg);
    } else {
      log_arg = std::log(2.0 * params_.alpha) + log2_of(m) * M_LN2;
    }
    return slack / (1.0 + log_arg);
  } else {
    const Real arg = 2 * int_to_real<Real>(m) * params_.alpha + 1;
    return slack / (1 + log(arg));
  }
}

template <class Real>
Real Sigma::strip_value(const Int& m, Real local) const {
  const PieceData& d = piece_data(m);
  const Real g = gap_impl<Real>(m);
  if (d.constant) return 1 - g / 2;
  Real u;
  if constexpr (std::is_same_v<Real, double>) {
    double acc = 0;
    for (std::size_t i = d.coeffs_d.size(); i-- > 0;) acc = acc * local + d.coeffs_d[i];
    u = acc;
  } else {
    Real acc(0);
    const auto& c = d.u.coefficients();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * local + to_real<Real>(c[i]);
    u = acc;
  }
  return 1 - g * (to_real<Real>(d.two_hi_minus_lo) - u) / (3 * to_real<Real>(d.span));
}

template <class Real>
Real Sigma::strip_endpoint(const Int& m, bool right) const {
  const PieceData& d = piece_data(m);
  const Real g = gap_impl<Real>(m);
  if (d.constant) return 1 - g / 2;
  const Rational& u = right ? d.value_at_1 : d.value_at_0;
  return 1 - g * to_real<Real>(d.two_hi_minus_lo - u) / (3 * to_real<Real>(d.span));
}

template <class Real>
Real Sigma::piece_impl(const Int& m, double t) const {
  const Real local = Real(t) / params_.alpha - (2 * int_to_real<Real>(m) - 1);
  return strip_value<Real>(m, local);
}

template <class Real>
Real Sigma::transition_impl(const Int& m, double t) const {
  const Real alpha = Real(params_.alpha);
  const Real K = (strip_endpoint<Real>(m, true) + strip_endpoint<Real>(m + 1, false)) / 2;
  const double half_point = (2.0 * m.get_d() + 0.5) * params_.alpha;
  if (t <= half_point) {
    const Real left = 2 * int_to_real<Real>(m) * alpha;
    const Real width = to_real<Real>(piece_data(m).delta_ratio_lower) * alpha;
    const Real inner = piece_impl<Real>(m, t);
    const Real w = beta_impl<Real>(left, Real(left + width), Real(t));
    return K - w * (K - inner);
  }
  const Real right = (2 * int_to_real<Real>(m) + 1) * alpha;
  const Real width = to_real<Real>(piece_data(m + 1).delta_ratio_upper) * alpha;
  const Real inner = piece_impl<Real>(m + 1, t);
  const Real w = beta_impl<Real>(Real(right - width), right, Real(t));
  return K - (1 - w) * (K - inner);
}

template <class Real>
Real Sigma::tail_impl(double t) const {
  const Real w = bump_impl<Real>(Real(params_.alpha) - Real(t));
  return (1 - w) * (1 - gap_impl<Real>(1) / 2);
}

template <class Real>
Real Sigma::eval_impl(double t) const {
  if (t < params_.alpha) return tail_impl<Real>(t);
  const double s = t / params_.alpha;
  Int k(std::floor(s));
  if (mpz_odd_p(k.get_mpz_t())) return piece_impl<Real>((k + 1) / 2, t);
  if (s == std::floor(s)) return piece_impl<Real>(k / 2, t);  // shared endpoint: strip formula
  return transition_impl<Real>(k / 2, t);
}

double Sigma::eval(double t) const {
  if (!std::isfinite(t)) throw std::domain_error("sigma: input must be finite");
  if (precision_ == Precision::binary64) return eval_impl<double>(t);
  return static_cast<double>(eval_impl<BigFloat>(t));
}

int Sigma::compare(double t1, double t2) const {
  if (!std::isfinite(t1) || !std::isfinite(t2))
    throw std::domain_error("sigma: input must be finite");
  if (precision_ == Precision::binary64) {
    const double a = eval_impl<double>(t1), b = eval_impl<double>(t2);
    return a < b ? -1 : a > b ? 1 : 0;
  }
  const BigFloat a = eval_impl<BigFloat>(t1), b = eval_impl<BigFloat>(t2);
  return a < b ? -1 : a > b ? 1 : 0;
}

double Sigma::h(double t) const {
  if (!(t >= params_.alpha)) throw std::domain_error("h: domain is [alpha, inf)");
  const double slack = std::min(0.5, params_.lambda);
  if (precision_ == Precision::binary64)
    return 1.0 - slack / (1.0 + std::log(t - params_.alpha + 1.0));
  using std::log;
  const BigFloat gap = BigFloat(slack) / (1 + log(BigFloat(t) - params_.alpha + 1));
  return static_cast<double>(BigFloat(1 - gap));
}

PieceCoefficients Sigma::piece_coefficients(const Int& m) const {
  const PieceData& d = piece_data(m);
  const double g = gap_impl<double>(m);
  PieceCoefficients pc;
  pc.m = m;
  pc.is_constant = d.constant;
  pc.A1 = to_double(d.range_lo);
  pc.A2 = to_double(d.range_hi);
  pc.one_minus_M = g;
  pc.M = 1.0 - g;
  if (d.constant) {
    pc.piece_value = 1.0 - g / 2;
  } else {
    pc.a = 1.0 - g * to_double(d.two_hi_minus_lo / d.span) / 3.0;
    pc.b = g / (3.0 * to_double(d.span));
  }
  return pc;
}

double Sigma::delta_lower(const Int& m) const {
  return params_.alpha * to_double(piece_data(m).delta_ratio_lower);
}

double Sigma::delta_upper(const Int& m) const {
  return params_.alpha * to_double(piece_data(m + 1).delta_ratio_upper);
}

double Sigma::eval_polynomial_piece(const Int& m, double t) const {
  if (precision_ == Precision::binary64) return piece_impl<double>(m, t);
  return static_cast<double>(piece_impl<BigFloat>(m, t));
}

double Sigma::eval_transition(const Int& m, double t) const {
  if (precision_ == Precision::binary64) return transition_impl<double>(m, t);
  return static_cast<double>(transition_impl<BigFloat>(m, t));
}

double Sigma::eval_tail(double t) const {
  if (precision_ == Precision::binary64) return tail_impl<double>(t);
  return static_cast<double>(tail_impl<BigFloat>(t));
}

}  // namespace usigma
