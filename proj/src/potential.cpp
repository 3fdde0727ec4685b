#include "strip/potential.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace strip {

namespace {

// Expression AST. Nodes with only constant children are folded at build time.
struct Node {
  virtual ~Node() = default;
  virtual double eval(double x1, double x2) const = 0;
  virtual bool is_const() const { return false; }
};
using NodePtr = std::unique_ptr<Node>;

struct Const : Node {
  double v;
  explicit Const(double v) : v(v) {}
  double eval(double, double) const override { return v; }
  bool is_const() const override { return true; }
};

struct Var : Node {
  int which;  // 0 -> x1, 1 -> x2
  explicit Var(int w) : which(w) {}
  double eval(double x1, double x2) const override { return which == 0 ? x1 : x2; }
};

struct Binary : Node {
  char op;
  NodePtr lhs, rhs;
  Binary(char op, NodePtr l, NodePtr r) : op(op), lhs(std::move(l)), rhs(std::move(r)) {}
  double eval(double x1, double x2) const override {
    const double a = lhs->eval(x1, x2), b = rhs->eval(x1, x2);
    switch (op) {
      case '+': return a + b;
      case '-': return a - b;
      case '*': return a * b;
      case '/': return a / b;
      default: return std::pow(a, b);
    }
  }
};

struct Unary : Node {
  int fn;  // 0 exp, 1 sin, 2 cos, 3 abs, 4 negate
  NodePtr arg;
  Unary(int fn, NodePtr a) : fn(fn), arg(std::move(a)) {}
  double eval(double x1, double x2) const override {
    const double a = arg->eval(x1, x2);
    switch (fn) {
      case 0: return std::exp(a);
      case 1: return std::sin(a);
      case 2: return std::cos(a);
      case 3: return std::abs(a);
      default: return -a;
    }
  }
};

struct Indicator : Node {
  NodePtr v, lo, hi;
  Indicator(NodePtr v, NodePtr lo, NodePtr hi)
      : v(std::move(v)), lo(std::move(lo)), hi(std::move(hi)) {}
  double eval(double x1, double x2) const override {
    const double x = v->eval(x1, x2);
    return (x >= lo->eval(x1, x2) && x <= hi->eval(x1, x2)) ? 1.0 : 0.0;
  }
};

NodePtr fold(NodePtr n) {
  if (n->is_const()) return n;
  if (auto* b = dynamic_cast<Binary*>(n.get())) {
    if (b->lhs->is_const() && b->rhs->is_const()) return std::make_unique<Const>(n->eval(0, 0));
  } else if (auto* u = dynamic_cast<Unary*>(n.get())) {
    if (u->arg->is_const()) return std::make_unique<Const>(n->eval(0, 0));
  } else if (auto* i = dynamic_cast<Indicator*>(n.get())) {
    if (i->v->is_const() && i->lo->is_const() && i->hi->is_const())
      return std::make_unique<Const>(n->eval(0, 0));
  }
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    auto n = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return n;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    std::ostringstream msg;
    msg << "expression parse error at position " << pos_ << ": " << what << " in \"" << s_ << "\"";
    throw std::invalid_argument(msg.str());
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    auto n = term();
    for (;;) {
      if (eat('+')) n = fold(std::make_unique<Binary>('+', std::move(n), term()));
      else if (eat('-')) n = fold(std::make_unique<Binary>('-', std::move(n), term()));
      else return n;
    }
  }

  NodePtr term() {
    auto n = factor();
    for (;;) {
      if (eat('*')) n = fold(std::make_unique<Binary>('*', std::move(n), factor()));
      else if (eat('/')) n = fold(std::make_unique<Binary>('/', std::move(n), factor()));
      else return n;
    }
  }

  NodePtr factor() {
    if (eat('-')) return fold(std::make_unique<Unary>(4, factor()));
    auto base = primary();
    if (eat('^')) return fold(std::make_unique<Binary>('^', std::move(base), factor()));
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (eat('(')) {
      auto n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("expected number, variable, or function");
  }

  NodePtr number() {
    std::size_t end = 0;
    double v = 0;
    try {
      v = std::stod(s_.substr(pos_), &end);
    } catch (const std::exception&) {
      fail("bad number");
    }
    pos_ += end;
    return std::make_unique<Const>(v);
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "x1" || name == "s") return std::make_unique<Var>(0);  // s: arclength densities
    if (name == "x2") return std::make_unique<Var>(1);
    if (name == "pi") return std::make_unique<Const>(3.14159265358979323846);
    if (name == "indicator") {
      if (!eat('(')) fail("indicator expects '('");
      auto v = expr();
      if (!eat(',')) fail("indicator expects 3 arguments");
      auto lo = expr();
      if (!eat(',')) fail("indicator expects 3 arguments");
      auto hi = expr();
      if (!eat(')')) fail("expected ')'");
      return fold(std::make_unique<Indicator>(std::move(v), std::move(lo), std::move(hi)));
    }
    int fn = -1;
    if (name == "exp") fn = 0;
    else if (name == "sin") fn = 1;
    else if (name == "cos") fn = 2;
    else if (name == "abs") fn = 3;
    else fail("unknown identifier '" + name + "'");
    if (!eat('(')) fail("function expects '('");
    auto a = expr();
    if (!eat(')')) fail("expected ')'");
    return fold(std::make_unique<Unary>(fn, std::move(a)));
  }
};

}  // namespace

std::function<double(double, double)> parse_expression(const std::string& expr) {
  std::shared_ptr<Node> root{Parser(expr).parse().release()};
  return [root](double x1, double x2) { return root->eval(x1, x2); };
}

Potential::Potential() : eval_([](double, double) { return 0.0; }) {}

Potential Potential::from_expression(const std::string& expr) {
  Potential p;
  p.eval_ = parse_expression(expr);
  return p;
}

Potential Potential::from_callable(std::function<double(double, double)> f) {
  Potential p;
  p.eval_ = std::move(f);
  return p;
}

Potential Potential::from_grid(double x1_min, double x1_max, double x2_min, double x2_max,
                               std::size_t nx1, std::size_t nx2, std::vector<double> values) {
  if (nx1 < 2 || nx2 < 2) throw std::invalid_argument("grid potential needs at least 2x2 samples");
  if (values.size() != nx1 * nx2)
    throw std::invalid_argument("grid potential: values size does not match nx1*nx2");
  if (!(x1_max > x1_min) || !(x2_max > x2_min))
    throw std::invalid_argument("grid potential: degenerate box");
  auto vals = std::make_shared<std::vector<double>>(std::move(values));
  Potential p;
  p.eval_ = [=](double x1, double x2) {
    double s = (x1 - x1_min) / (x1_max - x1_min) * (nx1 - 1);
    double t = (x2 - x2_min) / (x2_max - x2_min) * (nx2 - 1);
    s = std::clamp(s, 0.0, double(nx1 - 1));
    t = std::clamp(t, 0.0, double(nx2 - 1));
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(s), nx1 - 2);
    const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(t), nx2 - 2);
    const double fs = s - i, ft = t - j;
    auto at = [&](std::size_t ii, std::size_t jj) { return (*vals)[ii * nx2 + jj]; };
    return (1 - fs) * (1 - ft) * at(i, j) + fs * (1 - ft) * at(i + 1, j) +
           (1 - fs) * ft * at(i, j + 1) + fs * ft * at(i + 1, j + 1);
  };
  return p;
}

void Potential::check_nonnegative(double x1_min, double x1_max, double x2_min, double x2_max,
                                  int samples_per_axis) const {
  for (int i = 0; i < samples_per_axis; ++i) {
    for (int j = 0; j < samples_per_axis; ++j) {
      const double x1 = x1_min + (x1_max - x1_min) * i / (samples_per_axis - 1);
      const double x2 = x2_min + (x2_max - x2_min) * j / (samples_per_axis - 1);
      const double v = eval_(x1, x2);
      if (!(v >= 0.0)) {
        std::ostringstream msg;
        msg << "potential is negative or non-finite at (" << x1 << ", " << x2 << "): " << v;
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

}  // namespace strip
