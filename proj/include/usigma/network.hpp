#pragma once

#include "usigma/solver.hpp"

#include <optional>

namespace usigma {

enum class EvalPath { numeric, virtual_placement };

struct ErrorReport {
  double sup_error = 0;
  double argmax = 0;
  std::size_t grid_size = 0;
  EvalPath path = EvalPath::numeric;
  double slack = 0;  // certified off-grid term L (b-a) / (grid-1)
};

// Evaluates c0 + c1 sigma(w x - theta), either through sigma itself
// (numeric theta) or through the polynomial identity on [a, b].  The two
// agree wherever both are defined.
class NetworkEvaluator {
 public:
  NetworkEvaluator(const NeuronParams& params, const Sigma& sigma);

  double operator()(double x) const { return eval(x, {}); }
  double eval(double x, std::optional<EvalPath> force) const;
  EvalPath default_path() const { return default_path_; }

 private:
  double eval_unit_poly(double t) const;

  const NeuronParams& params_;
  const Sigma& sigma_;
  EvalPath default_path_;
  enum class PolyMode { direct, bernstein_residual, exact } poly_mode_;
  std::vector<double> poly_d_;
  std::vector<double> log_binom_;
};

double eval_network(const NeuronParams& params, double x, const Sigma& sigma,
                    std::optional<EvalPath> force = {});

// Max |f - network| over a uniform grid (endpoints included), with the
// certified Lipschitz slack for the gaps between grid points.
ErrorReport sup_error(const NeuronParams& params, const TargetFunction& f,
                      std::size_t grid, const Sigma& sigma,
                      std::optional<EvalPath> force = {});

}  // namespace usigma
