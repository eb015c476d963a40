#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scaledcons {

enum class Var { X, T };

/// Immutable expression over (x, t): constants, x, t, + - * /, sin, cos and
/// constant powers. Trees are shared and never mutated, so copies are cheap
/// and safe to use from several threads.
class Expr {
 public:
  Expr(double constant);  // NOLINT(google-explicit-constructor)

  static Expr x();
  static Expr t();

  double eval(double x, double t) const;
  Expr derivative(Var v) const;

  /// Infix form accepted by parse_expression; constants printed round-trip.
  std::string str() const;

  std::optional<double> constant_value() const;
  bool depends_on(Var v) const;
  std::size_t node_count() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr pow(const Expr& base, double exponent);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class ExprParseError : public std::invalid_argument {
 public:
  ExprParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?        exponent must fold to a constant
///   primary := number | 'x' | 't' | 'pi' | ('sin' | 'cos') '(' expr ')' | '(' expr ')'
Expr parse_expression(std::string_view text);

}  // namespace scaledcons
