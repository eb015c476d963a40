#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "scaledcons/expression.hpp"

namespace scaledcons {

/// Per-agent scaling g(x, t) with both partial derivatives derived
/// symbolically once at construction.
class ScaleFunction {
 public:
  explicit ScaleFunction(Expr g);

  double eval(double x, double t) const { return g_.eval(x, t); }
  double d_dx(double x, double t) const { return dgdx_.eval(x, t); }
  double d_dt(double x, double t) const { return dgdt_.eval(x, t); }

  const Expr& expr() const { return g_; }
  const Expr& dx_expr() const { return dgdx_; }
  const Expr& dt_expr() const { return dgdt_; }
  bool time_varying() const { return g_.depends_on(Var::T); }

 private:
  Expr g_;
  Expr dgdx_;
  Expr dgdt_;
};

ScaleFunction identity_scale();

/// Parses an expression string (see parse_expression) into a scale.
ScaleFunction parse_scale(std::string_view text);

/// The four scale settings used in the reproduction scenarios: C1 and C2 on
/// the six-agent undirected example, C3 and C4 on the six-agent directed one.
enum class ScaleSetting { C1, C2, C3, C4 };

std::optional<ScaleSetting> parse_scale_setting(std::string_view name);
const char* to_string(ScaleSetting s);

/// Scale of agent `agent` (1-based, 1..6) in the given setting. Throws
/// std::out_of_range for an agent index outside 1..6.
ScaleFunction builtin_scale(ScaleSetting setting, int agent);

}  // namespace scaledcons
