#include "scaledcons/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace scaledcons {

enum class Kind { Const, X, T, Add, Sub, Mul, Div, Neg, Sin, Cos, Pow };

struct Expr::Node {
  Kind kind;
  double value = 0.0;  // constant, or exponent for Pow
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0) {
  return std::make_shared<const Expr::Node>(Expr::Node{k, value, std::move(a), std::move(b)});
}

NodePtr constant(double v) { return make(Kind::Const, nullptr, nullptr, v); }

bool is_const(const NodePtr& n, double v) { return n->kind == Kind::Const && n->value == v; }

double eval_node(const Expr::Node& n, double x, double t) {
  switch (n.kind) {
    case Kind::Const: return n.value;
    case Kind::X: return x;
    case Kind::T: return t;
    case Kind::Add: return eval_node(*n.a, x, t) + eval_node(*n.b, x, t);
    case Kind::Sub: return eval_node(*n.a, x, t) - eval_node(*n.b, x, t);
    case Kind::Mul: return eval_node(*n.a, x, t) * eval_node(*n.b, x, t);
    case Kind::Div: return eval_node(*n.a, x, t) / eval_node(*n.b, x, t);
    case Kind::Neg: return -eval_node(*n.a, x, t);
    case Kind::Sin: return std::sin(eval_node(*n.a, x, t));
    case Kind::Cos: return std::cos(eval_node(*n.a, x, t));
    case Kind::Pow: return std::pow(eval_node(*n.a, x, t), n.value);
  }
  return std::nan("");
}

int precedence(Kind k) {
  switch (k) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that still round-trips.
  for (int digits = 1; digits < 17; ++digits) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", digits, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::string to_str(const Expr::Node& n);

std::string wrap(const Expr::Node& child, int parent_prec, bool strict) {
  const int p = precedence(child.kind);
  const bool paren = strict ? p <= parent_prec : p < parent_prec;
  const bool negative_const = child.kind == Kind::Const && child.value < 0.0;
  return paren || negative_const ? "(" + to_str(child) + ")" : to_str(child);
}

std::string to_str(const Expr::Node& n) {
  switch (n.kind) {
    case Kind::Const: return format_number(n.value);
    case Kind::X: return "x";
    case Kind::T: return "t";
    case Kind::Add: return to_str(*n.a) + " + " + wrap(*n.b, 1, true);
    case Kind::Sub: return to_str(*n.a) + " - " + wrap(*n.b, 1, true);
    case Kind::Mul: return wrap(*n.a, 2, false) + "*" + wrap(*n.b, 2, true);
    case Kind::Div: return wrap(*n.a, 2, false) + "/" + wrap(*n.b, 2, true);
    case Kind::Neg: return "-" + wrap(*n.a, 3, false);
    case Kind::Sin: return "sin(" + to_str(*n.a) + ")";
    case Kind::Cos: return "cos(" + to_str(*n.a) + ")";
    case Kind::Pow: {
      const std::string exp = format_number(n.value);
      return wrap(*n.a, 4, true) + "^" + (n.value < 0.0 ? "(" + exp + ")" : exp);
    }
  }
  return "?";
}

bool depends(const Expr::Node& n, Var v) {
  switch (n.kind) {
    case Kind::Const: return false;
    case Kind::X: return v == Var::X;
    case Kind::T: return v == Var::T;
    default: return (n.a && depends(*n.a, v)) || (n.b && depends(*n.b, v));
  }
}

std::size_t count(const Expr::Node& n) {
  return 1 + (n.a ? count(*n.a) : 0) + (n.b ? count(*n.b) : 0);
}

}  // namespace

Expr::Expr(double c) : node_(constant(c)) {}

Expr Expr::x() { return Expr(make(Kind::X)); }
Expr Expr::t() { return Expr(make(Kind::T)); }

double Expr::eval(double x, double t) const { return eval_node(*node_, x, t); }

std::string Expr::str() const { return to_str(*node_); }

std::optional<double> Expr::constant_value() const {
  if (node_->kind == Kind::Const) return node_->value;
  return std::nullopt;
}

bool Expr::depends_on(Var v) const { return depends(*node_, v); }

std::size_t Expr::node_count() const { return count(*node_); }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.node_->kind == Kind::Const && b.node_->kind == Kind::Const) return a.node_->value + b.node_->value;
  if (is_const(a.node_, 0.0)) return b;
  if (is_const(b.node_, 0.0)) return a;
  if (b.node_->kind == Kind::Neg) return Expr(make(Kind::Sub, a.node_, b.node_->a));
  return Expr(make(Kind::Add, a.node_, b.node_));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.node_->kind == Kind::Const && b.node_->kind == Kind::Const) return a.node_->value - b.node_->value;
  if (is_const(b.node_, 0.0)) return a;
  if (is_const(a.node_, 0.0)) return -b;
  if (b.node_->kind == Kind::Neg) return Expr(make(Kind::Add, a.node_, b.node_->a));
  return Expr(make(Kind::Sub, a.node_, b.node_));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.node_->kind == Kind::Const && b.node_->kind == Kind::Const) return a.node_->value * b.node_->value;
  if (is_const(a.node_, 0.0) || is_const(b.node_, 0.0)) return 0.0;
  if (is_const(a.node_, 1.0)) return b;
  if (is_const(b.node_, 1.0)) return a;
  if (is_const(a.node_, -1.0)) return -b;
  if (is_const(b.node_, -1.0)) return -a;
  return Expr(make(Kind::Mul, a.node_, b.node_));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.node_->kind == Kind::Const && b.node_->kind == Kind::Const) return a.node_->value / b.node_->value;
  if (is_const(a.node_, 0.0)) return 0.0;
  if (is_const(b.node_, 1.0)) return a;
  return Expr(make(Kind::Div, a.node_, b.node_));
}

Expr operator-(const Expr& a) {
  if (a.node_->kind == Kind::Const) return -a.node_->value;
  if (a.node_->kind == Kind::Neg) return Expr(a.node_->a);
  return Expr(make(Kind::Neg, a.node_));
}

Expr sin(const Expr& a) {
  if (a.node_->kind == Kind::Const) return std::sin(a.node_->value);
  return Expr(make(Kind::Sin, a.node_));
}

Expr cos(const Expr& a) {
  if (a.node_->kind == Kind::Const) return std::cos(a.node_->value);
  return Expr(make(Kind::Cos, a.node_));
}

Expr pow(const Expr& base, double exponent) {
  if (base.node_->kind == Kind::Const) return std::pow(base.node_->value, exponent);
  if (exponent == 0.0) return 1.0;
  if (exponent == 1.0) return base;
  return Expr(make(Kind::Pow, base.node_, nullptr, exponent));
}

Expr Expr::derivative(Var v) const {
  const Node& n = *node_;
  auto sub = [](const NodePtr& p) { return Expr(p); };
  switch (n.kind) {
    case Kind::Const: return 0.0;
    case Kind::X: return v == Var::X ? 1.0 : 0.0;
    case Kind::T: return v == Var::T ? 1.0 : 0.0;
    case Kind::Add: return sub(n.a).derivative(v) + sub(n.b).derivative(v);
    case Kind::Sub: return sub(n.a).derivative(v) - sub(n.b).derivative(v);
    case Kind::Mul: {
      const Expr a = sub(n.a), b = sub(n.b);
      return a.derivative(v) * b + a * b.derivative(v);
    }
    case Kind::Div: {
      const Expr a = sub(n.a), b = sub(n.b);
      const Expr db = b.derivative(v);
      if (db.constant_value() == 0.0) return a.derivative(v) / b;
      return (a.derivative(v) * b - a * db) / pow(b, 2.0);
    }
    case Kind::Neg: return -sub(n.a).derivative(v);
    case Kind::Sin: return cos(sub(n.a)) * sub(n.a).derivative(v);
    case Kind::Cos: return -(sin(sub(n.a)) * sub(n.a).derivative(v));
    case Kind::Pow: return n.value * pow(sub(n.a), n.value - 1.0) * sub(n.a).derivative(v);
  }
  return 0.0;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ExprParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) lhs = lhs + term();
      else if (accept('-')) lhs = lhs - term();
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = lhs * unary();
      else if (accept('/')) lhs = lhs / unary();
      else return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      const std::size_t at = pos_;
      const Expr exponent = unary();
      const auto c = exponent.constant_value();
      if (!c) throw ExprParseError("exponent must be a constant", at);
      return pow(base, *c);
    }
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "x") return Expr::x();
      if (word == "t") return Expr::t();
      if (word == "pi") return std::numbers::pi;
      if (word == "sin" || word == "cos") {
        expect('(');
        Expr arg = expr();
        expect(')');
        return word == "sin" ? sin(arg) : cos(arg);
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(word) + "'");
    }
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace scaledcons
