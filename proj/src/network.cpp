#include "usigma/network.hpp"

#include <cmath>
#include <stdexcept>

namespace usigma {

NetworkEvaluator::NetworkEvaluator(const NeuronParams& params, const Sigma& sigma)
    : params_(params), sigma_(sigma) {
  default_path_ = params_.theta_is_numeric() ? EvalPath::numeric : EvalPath::virtual_placement;

  const auto& coeffs = params_.poly.coefficients();
  double max_mag = 0;
  for (const Rational& c : coeffs) max_mag = std::max(max_mag, std::fabs(to_double(c)));
  if (coeffs.size() <= 65 && max_mag <= 1e6) {
    poly_mode_ = PolyMode::direct;
    poly_d_.reserve(coeffs.size());
    for (const Rational& c : coeffs) poly_d_.push_back(to_double(c));
  } else if (!params_.samples.empty()) {
    poly_mode_ = PolyMode::bernstein_residual;
    const std::size_t n = params_.samples.size() - 1;
    log_binom_.resize(n + 1);
    const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
    for (std::size_t k = 0; k <= n; ++k)
      log_binom_[k] = lg_n1 - std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(n - k) + 1.0);
  } else {
    poly_mode_ = PolyMode::exact;
  }
}

double NetworkEvaluator::eval_unit_poly(double t) const {
  switch (poly_mode_) {
    case PolyMode::direct: {
      double acc = 0;
      for (std::size_t i = poly_d_.size(); i-- > 0;) acc = acc * t + poly_d_[i];
      return acc;
    }
    case PolyMode::bernstein_residual: {
      // p(t) = B_n(t) + (p - B_n)(t): the Bernstein part is evaluated in its
      // own basis (self-normalized log weights), the residual has tiny
      // coefficients and is safe under Horner.
      const auto& samples = params_.samples;
      const std::size_t n = samples.size() - 1;
      double bern;
      if (t <= 0) {
        bern = samples.front();
      } else if (t >= 1) {
        bern = samples.back();
      } else {
        const double lt = std::log(t), l1t = std::log1p(-t);
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k <= n; ++k)
          peak = std::max(peak, log_binom_[k] + static_cast<double>(k) * lt +
                                    static_cast<double>(n - k) * l1t);
        double s0 = 0, s1 = 0;
        for (std::size_t k = 0; k <= n; ++k) {
          const double lw = log_binom_[k] + static_cast<double>(k) * lt +
                            static_cast<double>(n - k) * l1t - peak;
          if (lw < -45.0) continue;
          const double w = std::exp(lw);
          s0 += w;
          s1 += w * samples[k];
        }
        bern = s1 / s0;
      }
      double rho = 0;
      for (std::size_t i = params_.residual.size(); i-- > 0;) rho = rho * t + params_.residual[i];
      return bern + rho;
    }
    case PolyMode::exact:
      return to_double(params_.poly.eval(rational_from_double(t)));
  }
  return 0;  // unreachable
}

double NetworkEvaluator::eval(double x, std::optional<EvalPath> force) const {
  const EvalPath path = force.value_or(default_path_);
  if (path == EvalPath::numeric) {
    if (!params_.theta_is_numeric())
      throw std::domain_error("network: numeric path unavailable (symbolic placement)");
    return params_.c0 + params_.c1 * sigma_.eval(params_.w * x - params_.theta);
  }
  const double a = params_.a, b = params_.b;
  const double pad = 1e-12 * (std::fabs(a) + std::fabs(b) + 1);
  if (x < a - pad || x > b + pad)
    throw std::domain_error("network: virtual placement path is only defined on [a, b]");
  const double t = std::clamp((x - a) / (b - a), 0.0, 1.0);
  return eval_unit_poly(t);
}

double eval_network(const NeuronParams& params, double x, const Sigma& sigma,
                    std::optional<EvalPath> force) {
  return NetworkEvaluator(params, sigma).eval(x, force);
}

ErrorReport sup_error(const NeuronParams& params, const TargetFunction& f,
                      std::size_t grid, const Sigma& sigma,
                      std::optional<EvalPath> force) {
  if (grid < 2) throw std::invalid_argument("sup_error: grid must have at least 2 points");
  const NetworkEvaluator net(params, sigma);
  ErrorReport report;
  report.grid_size = grid;
  report.path = force.value_or(net.default_path());
  const double a = f.a, b = f.b;
  const auto last = static_cast<double>(grid - 1);
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = (a * (last - static_cast<double>(i)) + b * static_cast<double>(i)) / last;
    const double err = std::fabs(f.f(x) - net.eval(x, report.path));
    if (err > report.sup_error) {
      report.sup_error = err;
      report.argmax = x;
    }
  }
  report.slack = f.lipschitz * (b - a) / last;
  return report;
}

}  // namespace usigma
