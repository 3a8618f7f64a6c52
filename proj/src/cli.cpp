#include "usigma/cli.hpp"

#include "usigma/expression.hpp"
#include "usigma/network.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace usigma::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct FunctionFlags {
  std::string expression;
  std::string samples_path;
  double a = 0, b = 1;
  bool a_set = false, b_set = false;
  double lipschitz = 0;
  bool lipschitz_set = false;
};

void add_function_flags(CLI::App& cmd, FunctionFlags& ff) {
  auto* expr_opt = cmd.add_option("--expr", ff.expression, "target expression in x");
  auto* samples_opt = cmd.add_option("--samples", ff.samples_path,
                                     "CSV of x,fx samples (piecewise-linear target)");
  expr_opt->excludes(samples_opt);
  cmd.add_option("--a", ff.a, "left endpoint")->each([&ff](const std::string&) { ff.a_set = true; });
  cmd.add_option("--b", ff.b, "right endpoint")->each([&ff](const std::string&) { ff.b_set = true; });
  cmd.add_option("--L", ff.lipschitz, "Lipschitz constant of the target")
      ->each([&ff](const std::string&) { ff.lipschitz_set = true; });
}

// Builds the target; throws expr::ParseError or std::runtime_error.
TargetFunction make_target(const FunctionFlags& ff) {
  TargetFunction target;
  if (!ff.expression.empty()) {
    expr::Expression e = expr::Expression::parse(ff.expression);
    target.f = [e](double x) { return e.eval(x); };
    if (!ff.a_set || !ff.b_set) throw std::runtime_error("--a and --b are required with --expr");
    if (!ff.lipschitz_set) throw std::runtime_error("--L is required with --expr");
    target.a = ff.a;
    target.b = ff.b;
    target.lipschitz = ff.lipschitz;
  } else if (!ff.samples_path.empty()) {
    auto s = std::make_shared<expr::SampledFunction>(expr::SampledFunction::from_csv_file(ff.samples_path));
    target.a = ff.a_set ? ff.a : s->min_x();
    target.b = ff.b_set ? ff.b : s->max_x();
    if (target.a < s->min_x() || target.b > s->max_x())
      throw std::runtime_error("[a, b] must lie within the sampled span");
    target.lipschitz = ff.lipschitz_set ? ff.lipschitz : s->max_slope();
    if (!(target.lipschitz > 0)) target.lipschitz = 1;  // constant sample set
    target.f = [s](double x) { return s->eval(x); };
  } else {
    throw std::runtime_error("one of --expr or --samples is required");
  }
  return target;
}

const char* tier_name(PlacementTier tier) {
  switch (tier) {
    case PlacementTier::unit: return "unit";
    case PlacementTier::numeric: return "numeric";
    case PlacementTier::symbolic: return "symbolic";
    case PlacementTier::astronomical: return "astronomical";
  }
  return "?";
}

void print_params(const NeuronParams& np, bool full_poly, std::ostream& out) {
  out << "a=" << fmt(np.a) << "\n";
  out << "b=" << fmt(np.b) << "\n";
  out << "L=" << fmt(np.lipschitz) << "\n";
  out << "epsilon=" << fmt(np.epsilon) << "\n";
  out << "alpha=" << fmt(np.sigma_params.alpha) << "\n";
  out << "lambda=" << fmt(np.sigma_params.lambda) << "\n";
  out << "n=" << np.bernstein_degree << "\n";
  out << "poly_degree=" << np.poly.degree() << "\n";
  const std::string poly = np.poly.str();
  if (full_poly || poly.size() <= 2048) out << "poly=" << poly << "\n";
  out << "placement=" << tier_name(np.tier) << "\n";
  if (np.placement.numeric_index) out << "m=" << np.placement.numeric_index->get_str() << "\n";
  if (np.placement.position_bits) {
    const Int& bits = *np.placement.position_bits;
    if (bit_length(bits) <= 63) out << "index_bits=" << bits.get_str() << "\n";
    else out << "index_bits_log2=" << fmt(log2_of(bits)) << "\n";
  } else if (np.tier == PlacementTier::astronomical) {
    out << "index_bits_log2=" << fmt(np.placement.log2_index()) << "\n";
  }
  out << "c0=" << fmt(np.c0) << "\n";
  out << "c1=" << fmt(np.c1) << "\n";
  out << "w=" << fmt(np.w) << "\n";
  if (np.theta_is_numeric()) {
    out << "theta=" << fmt(np.theta) << "\n";
    out << "theta_exact=" << to_string(*np.theta_exact) << "\n";
  } else {
    out << "theta=symbolic\n";
  }
}

int cmd_sigma(const std::vector<double>& ts, const SigmaParams& params, Precision precision,
              std::ostream& out) {
  const Sigma sigma(params, precision);
  for (double t : ts) out << fmt(t) << ',' << fmt17(sigma.eval(t)) << "\n";
  return 0;
}

int cmd_plot(double from, double to, double step, const std::string& path,
             const SigmaParams& params, Precision precision, std::ostream& out,
             std::ostream& err) {
  if (!(from < to)) {
    err << "error: empty range (--from must be < --to)\n";
    return 2;
  }
  if (!(step > 0)) {
    err << "error: --step must be positive\n";
    return 2;
  }
  const auto count = static_cast<long long>(std::llround((to - from) / step));
  if (count < 1) {
    err << "error: fewer than two grid points in range\n";
    return 2;
  }
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }
  const Sigma sigma(params, precision);
  file << "t,sigma\n";
  for (long long i = 0; i <= count; ++i) {
    const double t = (from * static_cast<double>(count - i) + to * static_cast<double>(i)) /
                     static_cast<double>(count);
    file << fmt(t) << ',' << fmt(sigma.eval(t)) << "\n";
  }
  if (!file.good()) {
    err << "error: write failure on '" << path << "'\n";
    return 1;
  }
  out << "wrote " << (count + 1) << " rows to " << path << "\n";
  return 0;
}

int cmd_enum(const std::string& kind, const std::string& n_text, std::ostream& out,
             std::ostream& err) {
  Int n;
  try {
    n = Int(n_text);
  } catch (const std::invalid_argument&) {
    err << "error: '" << n_text << "' is not an integer\n";
    return 2;
  }
  if (kind == "stern") out << stern_diatomic(n).get_str() << "\n";
  else if (kind == "q") out << to_string(calkin_wilf(n)) << "\n";
  else if (kind == "r") out << to_string(rational_at(n)) << "\n";
  else out << polynomial_at(n).str() << "\n";
  return 0;
}

int cmd_solve(const FunctionFlags& ff, double eps, const SigmaParams& params,
              unsigned long long bit_budget, bool full_poly, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  const TargetFunction target = make_target(ff);
  const NeuronParams np = solve(target, eps, params, bit_budget);
  for (const std::string& w : np.warnings) err << "warning: " << w << "\n";
  print_params(np, full_poly, out);
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      err << "error: cannot open '" << out_path << "' for writing\n";
      return 1;
    }
    print_params(np, true, file);
  }
  return 0;
}

int cmd_verify(const FunctionFlags& ff, double eps, const SigmaParams& params,
               unsigned long long bit_budget, std::size_t grid, double add_c0, double add_c1,
               double add_theta, const std::string& path_choice, std::ostream& out,
               std::ostream& err) {
  const TargetFunction target = make_target(ff);
  NeuronParams np = solve(target, eps, params, bit_budget);
  for (const std::string& w : np.warnings) err << "warning: " << w << "\n";
  np.c0 += add_c0;
  np.c1 += add_c1;
  if (np.theta_is_numeric()) np.theta += add_theta;

  std::optional<EvalPath> force;
  if (path_choice == "numeric") force = EvalPath::numeric;
  else if (path_choice == "virtual") force = EvalPath::virtual_placement;
  if ((add_c0 != 0 || add_c1 != 0 || add_theta != 0) && !force) {
    // Offsets only act through the sigma read-out.
    if (!np.theta_is_numeric()) {
      err << "error: cannot tamper a symbolic-theta instance (no numeric path)\n";
      return 2;
    }
    force = EvalPath::numeric;
  }

  const Sigma sigma(params);
  const ErrorReport report = sup_error(np, target, grid, sigma, force);
  out << "sup_error=" << fmt(report.sup_error) << "\n";
  out << "argmax=" << fmt(report.argmax) << "\n";
  out << "slack=" << fmt(report.slack) << "\n";
  out << "grid=" << report.grid_size << "\n";
  out << "path=" << (report.path == EvalPath::numeric ? "numeric" : "virtual") << "\n";
  out << "epsilon=" << fmt(eps) << "\n";
  const bool pass = report.sup_error + report.slack < eps;
  out << "pass=" << (pass ? "true" : "false") << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"universal single-neuron activation: evaluate, enumerate, solve, verify"};
  app.require_subcommand(1);

  SigmaParams params;
  std::string precision_name = "binary64";
  const auto add_sigma_flags = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", params.alpha, "interval scale (default 1)");
    cmd->add_option("--lambda", params.lambda, "monotonicity slack (default 0.5)");
    cmd->add_option("--precision", precision_name, "binary64 or extended")
        ->check(CLI::IsMember({"binary64", "extended"}));
  };

  auto* sigma_cmd = app.add_subcommand("sigma", "evaluate sigma at given points");
  std::vector<double> ts;
  sigma_cmd->add_option("-t,--t", ts, "evaluation points")->required();
  add_sigma_flags(sigma_cmd);

  auto* plot_cmd = app.add_subcommand("plot", "tabulate sigma to a CSV file");
  double from = 0, to = 10, step = 0.01;
  std::string plot_out;
  plot_cmd->add_option("--from", from, "start of range");
  plot_cmd->add_option("--to", to, "end of range");
  plot_cmd->add_option("--step", step, "grid step");
  plot_cmd->add_option("--out", plot_out, "output CSV path")->required();
  add_sigma_flags(plot_cmd);

  auto* enum_cmd = app.add_subcommand("enum", "print exact sequence values");
  std::string kind, n_text;
  enum_cmd->add_option("kind", kind, "stern | q | r | poly")
      ->required()
      ->check(CLI::IsMember({"stern", "q", "r", "poly"}));
  enum_cmd->add_option("n", n_text, "index")->required();

  auto* solve_cmd = app.add_subcommand("solve", "compute c0, c1, w, theta for a target");
  FunctionFlags solve_ff;
  double eps = 0.1;
  unsigned long long bit_budget = kDefaultBitBudget;
  bool full_poly = false;
  std::string solve_out;
  add_function_flags(*solve_cmd, solve_ff);
  solve_cmd->add_option("--eps", eps, "target sup-error")->required();
  solve_cmd->add_option("--max-index-bits", bit_budget, "bit budget for materializing m");
  solve_cmd->add_flag("--full-poly", full_poly, "always print the full polynomial");
  solve_cmd->add_option("--out", solve_out, "also write key=value output to this file");
  add_sigma_flags(solve_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "solve and measure the sup error on a grid");
  FunctionFlags verify_ff;
  double veps = 0.1, add_c0 = 0, add_c1 = 0, add_theta = 0;
  unsigned long long vbudget = kDefaultBitBudget;
  std::size_t grid = 10000;
  std::string path_choice = "auto";
  add_function_flags(*verify_cmd, verify_ff);
  verify_cmd->add_option("--eps", veps, "target sup-error")->required();
  verify_cmd->add_option("--grid", grid, "grid size (default 10000)");
  verify_cmd->add_option("--max-index-bits", vbudget, "bit budget for materializing m");
  verify_cmd->add_option("--add-c0", add_c0, "offset c0 before verifying (tamper check)");
  verify_cmd->add_option("--add-c1", add_c1, "offset c1 before verifying (tamper check)");
  verify_cmd->add_option("--add-theta", add_theta, "offset theta before verifying (tamper check)");
  verify_cmd->add_option("--path", path_choice, "auto | numeric | virtual")
      ->check(CLI::IsMember({"auto", "numeric", "virtual"}));
  add_sigma_flags(verify_cmd);

  std::vector<const char*> argv;
  argv.push_back("usigma");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const Precision precision =
      precision_name == "extended" ? Precision::extended : Precision::binary64;
  try {
    if (sigma_cmd->parsed()) return cmd_sigma(ts, params, precision, out);
    if (plot_cmd->parsed()) return cmd_plot(from, to, step, plot_out, params, precision, out, err);
    if (enum_cmd->parsed()) return cmd_enum(kind, n_text, out, err);
    if (solve_cmd->parsed())
      return cmd_solve(solve_ff, eps, params, bit_budget, full_poly, solve_out, out, err);
    if (verify_cmd->parsed())
      return cmd_verify(verify_ff, veps, params, vbudget, grid, add_c0, add_c1, add_theta,
                        path_choice, out, err);
  } catch (const expr::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace usigma::cli
