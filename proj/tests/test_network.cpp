#include "usigma/network.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace usigma;
using Catch::Matchers::WithinAbs;

namespace {

const Sigma& shared_sigma() {
  static const Sigma s(SigmaParams{1.0, 0.5});
  return s;
}

TargetFunction identity_target() {
  return TargetFunction{[](double x) { return x; }, 0.0, 1.0, 1.0};
}

}  // namespace

TEST_CASE("identity instance reproduces its inputs") {
  const NeuronParams np = solve(identity_target(), 0.1);
  CHECK(np.c1 != 0.0);
  CHECK_THAT(eval_network(np, 0.25, shared_sigma()), WithinAbs(0.25, 1e-12));
  CHECK_THAT(eval_network(np, 0.0, shared_sigma()), WithinAbs(0.0, 1e-12));
  CHECK_THAT(eval_network(np, 1.0, shared_sigma()), WithinAbs(1.0, 1e-12));
}

TEST_CASE("numeric and virtual paths agree on numeric instances") {
  const TargetFunction targets[] = {
      identity_target(),
      {[](double x) { return 2.0 * x - 1.0; }, 0.0, 1.0, 2.0},
      {[](double x) { return x; }, 2.0, 4.0, 1.0},
  };
  std::mt19937_64 rng(3);
  for (const TargetFunction& f : targets) {
    const NeuronParams np = solve(f, 0.1);
    REQUIRE(np.theta_is_numeric());
    std::uniform_real_distribution<double> dist(f.a, f.b);
    for (int i = 0; i < 100; ++i) {
      const double x = dist(rng);
      const double numeric = eval_network(np, x, shared_sigma(), EvalPath::numeric);
      const double virt = eval_network(np, x, shared_sigma(), EvalPath::virtual_placement);
      CHECK_THAT(numeric, WithinAbs(virt, 1e-9 * std::max(1.0, std::fabs(virt))));
    }
  }
}

TEST_CASE("constant instance returns its constant everywhere") {
  const TargetFunction third{[](double) { return 1.0 / 3.0; }, 0.0, 1.0, 1.0};
  const NeuronParams np = solve(third, 0.2);
  CHECK(np.c1 == 1.0);
  for (double x : {0.0, 0.1, 0.5, 0.77, 1.0}) {
    CHECK_THAT(eval_network(np, x, shared_sigma()), WithinAbs(1.0 / 3.0, 1e-12));
  }
}

TEST_CASE("virtual path rejects points outside the interval") {
  const TargetFunction vee{[](double x) { return std::fabs(x - 0.5); }, 0.0, 1.0, 1.0};
  const NeuronParams np = solve(vee, 0.2);
  REQUIRE(!np.theta_is_numeric());
  CHECK_THROWS_AS(eval_network(np, 1.5, shared_sigma()), std::domain_error);
  CHECK_THROWS_AS(eval_network(np, -0.1, shared_sigma()), std::domain_error);
  CHECK_THROWS_AS(eval_network(np, 0.5, shared_sigma(), EvalPath::numeric), std::domain_error);
}

TEST_CASE("sup_error on the identity instance") {
  const TargetFunction f = identity_target();
  const NeuronParams np = solve(f, 0.1);
  const ErrorReport report = sup_error(np, f, 10000, shared_sigma());
  CHECK(report.sup_error <= 1e-9);
  CHECK(report.path == EvalPath::numeric);
  CHECK(report.grid_size == 10000);
  CHECK(report.argmax >= 0.0);
  CHECK(report.argmax <= 1.0);
  CHECK_THAT(report.slack, WithinAbs(1.0 / 9999.0, 1e-18));
}

TEST_CASE("sup_error on the kink instance stays within the tolerance") {
  const TargetFunction vee{[](double x) { return std::fabs(x - 0.5); }, 0.0, 1.0, 1.0};
  const NeuronParams np = solve(vee, 0.1);
  const ErrorReport report = sup_error(np, vee, 2001, shared_sigma());
  CHECK(report.path == EvalPath::virtual_placement);
  CHECK(report.sup_error + report.slack < 0.1);
}

TEST_CASE("sup_error on a constant instance is tiny") {
  const TargetFunction third{[](double) { return 1.0 / 3.0; }, 0.0, 1.0, 1.0};
  const NeuronParams np = solve(third, 0.2);
  const ErrorReport report = sup_error(np, third, 1000, shared_sigma());
  CHECK(report.sup_error <= 1e-12);
}

TEST_CASE("sup_error validates the grid") {
  const NeuronParams np = solve(identity_target(), 0.1);
  CHECK_THROWS_AS(sup_error(np, identity_target(), 1, shared_sigma()), std::invalid_argument);
}
