#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace usigma::expr {

// Parse failure with a 0-based character offset into the input.
struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t pos);
  std::size_t position;
};

// A univariate expression in x: numeric literals, + - * /, unary minus,
// parentheses, and calls abs, sin, cos, exp, sqrt, min, max.
class Expression {
 public:
  static Expression parse(const std::string& text);

  double eval(double x) const;
  std::string str() const;

  friend bool operator==(const Expression& lhs, const Expression& rhs);

  struct Node;

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

// Piecewise-linear interpolant through (x, f(x)) samples with strictly
// increasing x.  CSV rows are "x,fx"; an optional header row is skipped.
class SampledFunction {
 public:
  static SampledFunction from_csv(std::istream& in);
  static SampledFunction from_csv_file(const std::string& path);

  double eval(double x) const;  // throws std::domain_error outside the sample span
  double min_x() const { return xs_.front(); }
  double max_x() const { return xs_.back(); }
  double max_slope() const;     // exact Lipschitz constant of the interpolant
  std::size_t size() const { return xs_.size(); }

 private:
  std::vector<double> xs_, ys_;
};

}  // namespace usigma::expr
