#include "usigma/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace usigma::expr {

ParseError::ParseError(const std::string& message, std::size_t pos)
    : std::runtime_error(message + " at position " + std::to_string(pos)), position(pos) {}

struct Expression::Node {
  enum class Kind { number, variable, negate, add, sub, mul, div, call };
  Kind kind;
  double value = 0;
  std::string fn;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

const std::map<std::string, int, std::less<>> kFunctions = {
    {"abs", 1}, {"sin", 1}, {"cos", 1}, {"exp", 1}, {"sqrt", 1}, {"min", 2}, {"max", 2}};

NodePtr make_node(Node::Kind kind, std::vector<NodePtr> args = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr run() {
    NodePtr e = additive();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr additive() {
    NodePtr left = multiplicative();
    for (;;) {
      if (eat('+')) left = make_node(Node::Kind::add, {left, multiplicative()});
      else if (eat('-')) left = make_node(Node::Kind::sub, {left, multiplicative()});
      else return left;
    }
  }

  NodePtr multiplicative() {
    NodePtr left = unary();
    for (;;) {
      if (eat('*')) left = make_node(Node::Kind::mul, {left, unary()});
      else if (eat('/')) left = make_node(Node::Kind::div, {left, unary()});
      else return left;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make_node(Node::Kind::negate, {unary()});
    return primary();
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '(') {
      ++pos_;
      NodePtr e = additive();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", pos_);
    if (!std::isfinite(v)) throw ParseError("numeric literal out of range", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (name == "x") return make_node(Node::Kind::variable);
    const auto it = kFunctions.find(name);
    if (it == kFunctions.end())
      throw ParseError("unknown identifier '" + name + "'", start);
    if (!eat('(')) throw ParseError("expected '(' after '" + name + "'", pos_);
    std::vector<NodePtr> args;
    args.push_back(additive());
    while (eat(',')) args.push_back(additive());
    if (!eat(')')) throw ParseError("expected ')'", pos_);
    if (static_cast<int>(args.size()) != it->second)
      throw ParseError("'" + name + "' takes " + std::to_string(it->second) + " argument(s)", start);
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::call;
    n->fn = name;
    n->args = std::move(args);
    return n;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

double eval_node(const Node& n, double x) {
  switch (n.kind) {
    case Node::Kind::number: return n.value;
    case Node::Kind::variable: return x;
    case Node::Kind::negate: return -eval_node(*n.args[0], x);
    case Node::Kind::add: return eval_node(*n.args[0], x) + eval_node(*n.args[1], x);
    case Node::Kind::sub: return eval_node(*n.args[0], x) - eval_node(*n.args[1], x);
    case Node::Kind::mul: return eval_node(*n.args[0], x) * eval_node(*n.args[1], x);
    case Node::Kind::div: return eval_node(*n.args[0], x) / eval_node(*n.args[1], x);
    case Node::Kind::call: {
      const double a = eval_node(*n.args[0], x);
      if (n.fn == "abs") return std::fabs(a);
      if (n.fn == "sin") return std::sin(a);
      if (n.fn == "cos") return std::cos(a);
      if (n.fn == "exp") return std::exp(a);
      if (n.fn == "sqrt") return std::sqrt(a);
      const double b = eval_node(*n.args[1], x);
      return n.fn == "min" ? std::fmin(a, b) : std::fmax(a, b);
    }
  }
  return 0;  // unreachable
}

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::add:
    case Node::Kind::sub: return 1;
    case Node::Kind::mul:
    case Node::Kind::div: return 2;
    case Node::Kind::negate: return 3;
    default: return 4;
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// Parenthesization chosen so that re-parsing the output rebuilds the same
// tree: left operands keep same-precedence chains bare, right operands and
// negated subexpressions get explicit parentheses.
void print_node(const Node& n, std::string& out) {
  const auto child = [&](const Node& c, bool needs_parens) {
    if (needs_parens) {
      out += '(';
      print_node(c, out);
      out += ')';
    } else {
      print_node(c, out);
    }
  };
  switch (n.kind) {
    case Node::Kind::number: out += format_double(n.value); return;
    case Node::Kind::variable: out += 'x'; return;
    case Node::Kind::negate:
      out += '-';
      child(*n.args[0], precedence(*n.args[0]) <= 3);
      return;
    case Node::Kind::add:
    case Node::Kind::sub:
    case Node::Kind::mul:
    case Node::Kind::div: {
      const int prec = precedence(n);
      child(*n.args[0], precedence(*n.args[0]) < prec);
      switch (n.kind) {
        case Node::Kind::add: out += " + "; break;
        case Node::Kind::sub: out += " - "; break;
        case Node::Kind::mul: out += "*"; break;
        default: out += "/"; break;
      }
      child(*n.args[1], precedence(*n.args[1]) <= prec);
      return;
    }
    case Node::Kind::call: {
      out += n.fn;
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print_node(*n.args[i], out);
      }
      out += ')';
      return;
    }
  }
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Node::Kind::number)
    return a.value == b.value || (std::isnan(a.value) && std::isnan(b.value));
  if (a.fn != b.fn || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal_nodes(*a.args[i], *b.args[i])) return false;
  return true;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  return Expression(Parser(text).run());
}

double Expression::eval(double x) const { return eval_node(*root_, x); }

std::string Expression::str() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

bool operator==(const Expression& lhs, const Expression& rhs) {
  return equal_nodes(*lhs.root_, *rhs.root_);
}

SampledFunction SampledFunction::from_csv(std::istream& in) {
  SampledFunction s;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string xs, ys;
    if (!std::getline(row, xs, ',') || !std::getline(row, ys)) {
      throw std::runtime_error("samples: line " + std::to_string(lineno) + ": expected 'x,fx'");
    }
    char* end = nullptr;
    const double x = std::strtod(xs.c_str(), &end);
    const bool x_ok = end != xs.c_str() && std::isfinite(x);
    const double y = std::strtod(ys.c_str(), &end);
    const bool y_ok = end != ys.c_str() && std::isfinite(y);
    if (!x_ok || !y_ok) {
      if (lineno == 1 && s.xs_.empty()) continue;  // header row
      throw std::runtime_error("samples: line " + std::to_string(lineno) + ": malformed number");
    }
    if (!s.xs_.empty() && x <= s.xs_.back())
      throw std::runtime_error("samples: line " + std::to_string(lineno) +
                               ": x column must be strictly increasing");
    s.xs_.push_back(x);
    s.ys_.push_back(y);
  }
  if (s.xs_.size() < 2) throw std::runtime_error("samples: need at least 2 rows");
  return s;
}

SampledFunction SampledFunction::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("samples: cannot open '" + path + "'");
  return from_csv(in);
}

double SampledFunction::eval(double x) const {
  const double pad = 1e-12 * (std::fabs(xs_.front()) + std::fabs(xs_.back()) + 1);
  if (x < xs_.front() - pad || x > xs_.back() + pad)
    throw std::domain_error("samples: evaluation outside the sampled span");
  x = std::clamp(x, xs_.front(), xs_.back());
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t hi = std::min<std::size_t>(xs_.size() - 1,
                                               static_cast<std::size_t>(it - xs_.begin()));
  const std::size_t lo = hi == 0 ? 0 : hi - 1;
  if (hi == lo) return ys_[lo];
  const double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return ys_[lo] + t * (ys_[hi] - ys_[lo]);
}

double SampledFunction::max_slope() const {
  double m = 0;
  for (std::size_t i = 1; i < xs_.size(); ++i)
    m = std::max(m, std::fabs((ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1])));
  return m;
}

}  // namespace usigma::expr
