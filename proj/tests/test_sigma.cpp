#include "usigma/sigma.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <future>
#include <limits>

using namespace usigma;
using Catch::Matchers::WithinAbs;

namespace {

// Frozen from 40-digit evaluations of the defining formulas; alpha = 1, lambda = 1/2.
constexpr double kH3 = 0.7617473209797478;   // h(3)
constexpr double kH5 = 0.8083878533313725;   // h(5)
constexpr double kH11 = 0.8528500851680988;  // h(11)
constexpr double kSigmaAlpha = 0.8808736604898739;  // (1 + h(3)) / 2
constexpr double kSigmaZero = 0.5568183505262163;   // (1 - 1/e)(1 + h(3)) / 2
constexpr double kA5 = 0.9019000567787325;
constexpr double kB5 = 0.04904997161063374;
constexpr double kM2Value = 0.9041939266656863;  // (1 + h(5)) / 2
constexpr double kBump1 = 0.36787944117144233;   // e^{-1}

Sigma default_sigma() { return Sigma(SigmaParams{1.0, 0.5}); }

}  // namespace

TEST_CASE("sigma parameter and input validation") {
  CHECK_THROWS_AS(Sigma(SigmaParams{0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Sigma(SigmaParams{-1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Sigma(SigmaParams{1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(default_sigma().eval(std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(default_sigma().eval(std::nan("")), std::domain_error);
}

TEST_CASE("h basics") {
  const Sigma s = default_sigma();
  CHECK(s.h(1.0) == 0.5);  // log 1 = 0
  CHECK_THAT(s.h(3.0), WithinAbs(kH3, 1e-14));
  CHECK_THAT(s.h(5.0), WithinAbs(kH5, 1e-14));
  CHECK_THAT(s.h(11.0), WithinAbs(kH11, 1e-14));
  CHECK_THROWS_AS(s.h(0.999), std::domain_error);

  const Sigma generous(SigmaParams{1.0, 2.0});
  CHECK(generous.h(1.0) == 0.5);  // min{1/2, lambda} caps the drop
  const Sigma strict(SigmaParams{1.0, 0.1});
  CHECK_THAT(strict.h(1.0), WithinAbs(0.9, 1e-15));

  double prev = s.h(1.0);
  for (double t = 1.5; t < 200; t += 0.5) {
    const double cur = s.h(t);
    CHECK(cur > prev);
    CHECK(cur < 1.0);
    prev = cur;
  }
}

TEST_CASE("bump examples") {
  CHECK(bump(0.0) == 0.0);
  CHECK(bump(-5.0) == 0.0);
  CHECK_THAT(bump(1.0), WithinAbs(kBump1, 1e-16));
  double prev = 0;
  for (double t = 0.1; t < 5; t += 0.1) {
    const double v = bump(t);
    CHECK(v > prev);
    CHECK(v < 1.0);
    prev = v;
  }
}

TEST_CASE("transition examples") {
  CHECK(transition(0, 1, -0.2) == 1.0);
  CHECK(transition(0, 1, 0.5) == 0.5);
  CHECK(transition(0, 1, 1.7) == 0.0);
  CHECK_THROWS_AS(transition(1, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(transition(2, 1, 0.5), std::invalid_argument);
  for (double t = 0.05; t < 1; t += 0.05) {
    const double v = transition(0, 1, t);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("piece coefficients for m = 5, 1, 2") {
  const Sigma s = default_sigma();

  const PieceCoefficients p5 = s.piece_coefficients(5);
  CHECK(!p5.is_constant);
  CHECK(p5.A1 == 0.0);
  CHECK(p5.A2 == 1.0);
  CHECK_THAT(p5.M, WithinAbs(kH11, 1e-14));
  CHECK_THAT(p5.a, WithinAbs(kA5, 1e-14));
  CHECK_THAT(p5.b, WithinAbs(kB5, 1e-14));
  CHECK_THAT(p5.a + p5.b, WithinAbs(0.95095, 1e-5));  // tabulated sigma(10)

  const PieceCoefficients p1 = s.piece_coefficients(1);
  CHECK(p1.is_constant);
  CHECK_THAT(p1.piece_value, WithinAbs(kSigmaAlpha, 1e-14));

  const PieceCoefficients p2 = s.piece_coefficients(2);
  CHECK(p2.is_constant);
  CHECK_THAT(p2.piece_value, WithinAbs(kM2Value, 1e-14));
}

TEST_CASE("sigma spot values from the published table") {
  const Sigma s = default_sigma();
  CHECK_THAT(s.eval(1.0), WithinAbs(0.88087, 1e-5));
  CHECK_THAT(s.eval(0.0), WithinAbs(0.55682, 1e-5));
  CHECK_THAT(s.eval(-10.0), WithinAbs(0.07655, 1e-5));
  CHECK_THAT(s.eval(10.0), WithinAbs(0.95095, 1e-5));
  CHECK_THAT(s.eval(0.0), WithinAbs(kSigmaZero, 1e-14));
}

TEST_CASE("delta widths") {
  const Sigma s = default_sigma();
  CHECK(s.delta_lower(1) == 0.5);    // constant piece: alpha / 2
  CHECK(s.delta_lower(2) == 0.5);
  CHECK(s.delta_lower(5) == 0.5);    // u = t: ratio exactly 1/2
  CHECK(s.delta_lower(25) == 0.25);  // u = t - t^2: span 2, slope bound 4
  for (unsigned long m = 1; m <= 60; ++m) {
    const double lower = s.delta_lower(Int(m));
    const double upper = s.delta_upper(Int(m));
    CHECK(lower > 0.0);
    CHECK(lower <= 0.5);
    CHECK(upper > 0.0);
    CHECK(upper <= 0.5);
  }
}

TEST_CASE("squeeze h < sigma < 1 on [alpha, 50 alpha]") {
  const Sigma s = default_sigma();
  for (int i = 0; i <= 9800; ++i) {
    const double t = 1.0 + i * (1.0 / 200.0);
    const double v = s.eval(t);
    CHECK(v > s.h(t));
    CHECK(v < 1.0);
  }
}

TEST_CASE("piece bound on polynomial strips") {
  const Sigma s = default_sigma();
  for (unsigned long m = 1; m <= 40; ++m) {
    const PieceCoefficients pc = s.piece_coefficients(Int(m));
    const double lo_bound = (1 + 2 * pc.M) / 3 - 1e-12;
    const double hi_bound = (2 + pc.M) / 3 + 1e-12;
    for (int i = 0; i <= 20; ++i) {
      const double t = (2.0 * m - 1.0) + i / 20.0;
      const double v = s.eval(t);
      CHECK(v >= lo_bound);
      CHECK(v <= hi_bound);
      CHECK(v > pc.M - 1e-12);
    }
  }
}

TEST_CASE("tail is strictly increasing and vanishes at -infinity") {
  const Sigma s = default_sigma();
  double prev = -1;
  for (int i = 0; i <= 2000; ++i) {
    const double t = -100.0 + i * (100.9 / 2000.0);  // up to t = 0.9
    const double v = s.eval(t);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(s.eval(-1e6) < 1e-5);
  CHECK(s.eval(-1e6) > 0.0);
}

TEST_CASE("extended precision resolves tail increments binary64 cannot") {
  const Sigma ext(SigmaParams{1.0, 0.5}, Precision::extended);
  const Sigma plain = default_sigma();
  // One grid step left of alpha the increment is ~ e^{-99}: invisible in
  // binary64, strictly positive at extended precision.
  const double step = 101.0 / 9999.0;
  const double t1 = 1.0 - 2.0 * step;
  const double t2 = 1.0 - step;
  CHECK(plain.eval(t2) == plain.eval(1.0));
  CHECK(ext.compare(t1, t2) < 0);
  CHECK(ext.compare(t2, 1.0) < 0);
  CHECK(ext.compare(t1, t1) == 0);
  CHECK(ext.compare(1.0, t1) > 0);
}

TEST_CASE("closed forms hold in extended mode") {
  const Sigma ext(SigmaParams{1.0, 0.5}, Precision::extended);
  CHECK_THAT(ext.eval(1.0), WithinAbs((1.0 + ext.h(3.0)) / 2.0, 1e-14));
  CHECK_THAT(ext.eval(0.0), WithinAbs((1.0 - std::exp(-1.0)) * (1.0 + ext.h(3.0)) / 2.0, 1e-14));
}

TEST_CASE("junction continuity across formulas") {
  const Sigma s = default_sigma();
  for (unsigned long k = 1; k <= 100; ++k) {
    const double t = static_cast<double>(k);
    double left, right;
    if (k == 1) {
      left = s.eval_tail(t);
      right = s.eval_polynomial_piece(1, t);
    } else if (k % 2 == 1) {
      const unsigned long m = (k + 1) / 2;
      left = s.eval_transition(Int(m - 1), t);
      right = s.eval_polynomial_piece(Int(m), t);
    } else {
      const unsigned long m = k / 2;
      left = s.eval_polynomial_piece(Int(m), t);
      right = s.eval_transition(Int(m), t);
    }
    CHECK_THAT(left, WithinAbs(right, 1e-10));
  }
}

TEST_CASE("shared endpoints evaluate through the strip formula") {
  const Sigma s = default_sigma();
  for (unsigned long k = 1; k <= 100; ++k) {
    const double t = static_cast<double>(k);
    const Int m = (k % 2 == 1) ? Int((k + 1) / 2) : Int(k / 2);
    CHECK(s.eval(t) == s.eval_polynomial_piece(m, t));
  }
}

TEST_CASE("flat midpoint of every transition interval") {
  const Sigma s = default_sigma();
  for (unsigned long m = 1; m <= 20; ++m) {
    const double c = 2.0 * m + 0.5;
    const double K = (s.eval_polynomial_piece(Int(m), 2.0 * m) +
                      s.eval_polynomial_piece(Int(m + 1), 2.0 * m + 1)) / 2.0;
    CHECK_THAT(s.eval(c), WithinAbs(K, 1e-12));
    const double fd = (s.eval(c + 1e-4) - s.eval(c - 1e-4)) / 2e-4;
    CHECK(std::fabs(fd) <= 1e-6);
  }
}

TEST_CASE("sigma equals K exactly between delta and the midpoint") {
  const Sigma s = default_sigma();
  // m = 25: u = t - t^2 gives delta = alpha/4 < alpha/2, so [50.25, 50.5] is flat.
  REQUIRE(s.delta_lower(25) == 0.25);
  const double base = s.eval(50.3);
  for (double t : {50.26, 50.33, 50.4, 50.45, 50.5}) CHECK(s.eval(t) == base);
  const double K = (s.eval_polynomial_piece(25, 50.0) +
                    s.eval_polynomial_piece(26, 51.0)) / 2.0;
  CHECK_THAT(base, WithinAbs(K, 1e-14));
}

TEST_CASE("lambda witness") {
  for (double lambda : {0.5, 2.0, 0.1}) {
    const Sigma s(SigmaParams{1.0, lambda});
    CHECK(1.0 - s.h(1.0) <= lambda + 1e-15);
    for (double t : {1.0, 2.5, 7.0, 40.0}) {
      const double v = s.eval(t);
      CHECK(v > s.h(t));
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("alpha != 1 keeps the structure") {
  const Sigma s(SigmaParams{0.25, 0.5});
  CHECK_THAT(s.eval(0.25), WithinAbs((1.0 + s.h(0.75)) / 2.0, 1e-14));
  for (int i = 0; i <= 400; ++i) {
    const double t = 0.25 + i * (0.25 * 49.0 / 400.0);
    const double v = s.eval(t);
    CHECK(v > s.h(t));
    CHECK(v < 1.0);
  }
}

TEST_CASE("polynomial range bounds hold exactly on a grid") {
  const Sigma s = default_sigma();
  for (unsigned long m = 1; m <= 200; ++m) {
    const PieceData& d = s.piece_data(Int(m));
    for (int i = 0; i <= 1000; i += 10) {
      const Rational t = make_rational(i, 1000);
      const Rational v = d.u.eval(t);
      CHECK(v >= d.range_lo);
      CHECK(v <= d.range_hi);
    }
  }
}

TEST_CASE("concurrent evaluation is deterministic") {
  const Sigma s = default_sigma();
  auto worker = [&s]() {
    double sum = 0;
    for (int i = 0; i <= 2000; ++i) sum += s.eval(-5.0 + i * 0.02);
    return sum;
  };
  auto f1 = std::async(std::launch::async, worker);
  auto f2 = std::async(std::launch::async, worker);
  auto f3 = std::async(std::launch::async, worker);
  const double base = worker();
  CHECK(f1.get() == base);
  CHECK(f2.get() == base);
  CHECK(f3.get() == base);
}
