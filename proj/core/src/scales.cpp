#include "scaledcons/scales.hpp"

#include <array>
#include <numbers>
#include <stdexcept>

namespace scaledcons {

ScaleFunction::ScaleFunction(Expr g)
    : g_(g), dgdx_(g.derivative(Var::X)), dgdt_(g.derivative(Var::T)) {}

ScaleFunction identity_scale() { return ScaleFunction(Expr::x()); }

ScaleFunction parse_scale(std::string_view text) { return ScaleFunction(parse_expression(text)); }

std::optional<ScaleSetting> parse_scale_setting(std::string_view name) {
  if (name == "C1") return ScaleSetting::C1;
  if (name == "C2") return ScaleSetting::C2;
  if (name == "C3") return ScaleSetting::C3;
  if (name == "C4") return ScaleSetting::C4;
  return std::nullopt;
}

const char* to_string(ScaleSetting s) {
  switch (s) {
    case ScaleSetting::C1: return "C1";
    case ScaleSetting::C2: return "C2";
    case ScaleSetting::C3: return "C3";
    case ScaleSetting::C4: return "C4";
  }
  return "?";
}

namespace {

// 0.5 sin(2 pi t) + 1
Expr oscillating_gain() {
  return 0.5 * sin(2.0 * std::numbers::pi * Expr::t()) + 1.0;
}

// -0.5 sin(2 pi t) - 1
Expr negated_oscillating_gain() {
  return -0.5 * sin(2.0 * std::numbers::pi * Expr::t()) - 1.0;
}

// x + x / (1 + 0.1 x^2)
Expr saturating_shape() {
  const Expr x = Expr::x();
  return x + x / (1.0 + 0.1 * pow(x, 2.0));
}

Expr c1(int agent) {
  const Expr x = Expr::x();
  switch (agent) {
    case 1: return oscillating_gain() * (5.0 * sin(0.2 * x) + 2.0 * x);
    case 2: return negated_oscillating_gain() * (2.0 * sin(0.5 * x) + 2.0 * x);
    case 3: return negated_oscillating_gain() * (sin(x) + 2.0 * x);
    case 4: return negated_oscillating_gain() * (5.0 * cos(0.2 * x) - 2.0 * x);
    case 5: return oscillating_gain() * (2.0 * cos(0.5 * x) - 2.0 * x);
    default: return oscillating_gain() * (cos(x) - 2.0 * x);
  }
}

Expr c2(int agent) {
  const Expr x = Expr::x();
  switch (agent) {
    case 1: return 5.0 * sin(0.2 * x) + 2.0 * x;
    case 2: return 10.0 * sin(0.5 * x) + 10.0 * x;
    case 3: return sin(x) + 2.0 * x;
    case 4: return -5.0 * cos(0.2 * x) + 2.0 * x;
    case 5: return -10.0 * cos(0.5 * x) + 10.0 * x;
    default: return -cos(x) + 2.0 * x;
  }
}

Expr c3(int agent) {
  const bool positive = agent == 1 || agent == 5 || agent == 6;
  return (positive ? oscillating_gain() : negated_oscillating_gain()) * saturating_shape();
}

Expr c4(int agent) {
  static constexpr std::array<double, 6> gains{1.0, 5.0, 1.0, -1.0, -5.0, -1.0};
  return gains[static_cast<std::size_t>(agent - 1)] * saturating_shape();
}

}  // namespace

ScaleFunction builtin_scale(ScaleSetting setting, int agent) {
  if (agent < 1 || agent > 6) {
    throw std::out_of_range(std::string("scale setting ") + to_string(setting) +
                            " defines agents 1..6; got " + std::to_string(agent));
  }
  switch (setting) {
    case ScaleSetting::C1: return ScaleFunction(c1(agent));
    case ScaleSetting::C2: return ScaleFunction(c2(agent));
    case ScaleSetting::C3: return ScaleFunction(c3(agent));
    case ScaleSetting::C4: return ScaleFunction(c4(agent));
  }
  throw std::out_of_range("unknown scale setting");
}

}  // namespace scaledcons
