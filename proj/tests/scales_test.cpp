#include "scaledcons/scales.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "scaledcons/expression.hpp"

namespace scaledcons {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Expression, ParsesAndEvaluates) {
  EXPECT_DOUBLE_EQ(parse_expression("2*x + 3").eval(4, 0), 11.0);
  EXPECT_DOUBLE_EQ(parse_expression("-x^2").eval(3, 0), -9.0);
  EXPECT_DOUBLE_EQ(parse_expression("2^3^2").eval(0, 0), 512.0);
  EXPECT_DOUBLE_EQ(parse_expression("x / (1 + 0.1*x^2)").eval(2, 0), 2.0 / 1.4);
  EXPECT_NEAR(parse_expression("sin(pi*t) + cos(x)").eval(0, 0.5), 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(parse_expression("1e-1 * 10").eval(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(parse_expression("8 - 2 - 1").eval(0, 0), 5.0);
  EXPECT_DOUBLE_EQ(parse_expression("8 / 2 / 2").eval(0, 0), 2.0);
}

TEST(Expression, ParseErrorsCarryOffset) {
  for (const char* bad : {"", "x +", "sin x", "(x", "x)", "2 $ 3", "foo(x)", "x^t"}) {
    EXPECT_THROW(parse_expression(bad), ExprParseError) << bad;
  }
  try {
    parse_expression("x + * 2");
    FAIL();
  } catch (const ExprParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Expression, ConstantFolding) {
  const Expr e = Expr(2.0) * Expr(3.0) + Expr(1.0);
  ASSERT_TRUE(e.constant_value().has_value());
  EXPECT_EQ(*e.constant_value(), 7.0);
  EXPECT_FALSE(Expr::x().constant_value().has_value());
  EXPECT_EQ((Expr::x() * 0.0).constant_value(), 0.0);
}

TEST(Expression, DependsOn) {
  const Expr e = parse_expression("x * sin(2*pi*t)");
  EXPECT_TRUE(e.depends_on(Var::X));
  EXPECT_TRUE(e.depends_on(Var::T));
  EXPECT_FALSE(parse_expression("x^2").depends_on(Var::T));
}

TEST(Expression, StrRoundTrip) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> xd(-3.0, 3.0);
  for (int s = 1; s <= 4; ++s) {
    for (int a = 1; a <= 6; ++a) {
      const Expr e = builtin_scale(static_cast<ScaleSetting>(s - 1), a).expr();
      for (const Expr& f : {e, e.derivative(Var::X), e.derivative(Var::T)}) {
        const Expr back = parse_expression(f.str());
        for (int k = 0; k < 20; ++k) {
          const double x = xd(rng), t = xd(rng);
          EXPECT_NEAR(back.eval(x, t), f.eval(x, t), 1e-12 * (1.0 + std::abs(f.eval(x, t)))) << f.str();
        }
      }
    }
  }
  for (const char* src : {"-(x - 2)", "1 - (x - 2)", "2 / (x * 3)", "(-2)^2", "-x^2", "x - -1"}) {
    const Expr e = parse_expression(src);
    EXPECT_DOUBLE_EQ(parse_expression(e.str()).eval(1.5, 0), e.eval(1.5, 0)) << src << " -> " << e.str();
  }
}

TEST(Scale, Eval) {
  EXPECT_EQ(identity_scale().eval(3.7, 99), 3.7);
  EXPECT_EQ(builtin_scale(ScaleSetting::C2, 1).eval(0, 0), 0.0);
  EXPECT_EQ(builtin_scale(ScaleSetting::C4, 1).eval(0, 0), 0.0);
  EXPECT_NEAR(builtin_scale(ScaleSetting::C2, 4).eval(0, 0), -5.0, 1e-15);
}

TEST(Scale, DerivativeHandValues) {
  EXPECT_EQ(identity_scale().d_dx(-7, 3), 1.0);
  EXPECT_NEAR(builtin_scale(ScaleSetting::C4, 1).d_dx(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(builtin_scale(ScaleSetting::C1, 1).d_dx(0, 0), 3.0, 1e-15);
  EXPECT_NEAR(builtin_scale(ScaleSetting::C1, 1).d_dt(1, 0), kPi * (5.0 * std::sin(0.2) + 2.0), 1e-12);
  EXPECT_NEAR(builtin_scale(ScaleSetting::C1, 1).d_dt(1, 0), 9.403876, 1e-6);
  EXPECT_NEAR(builtin_scale(ScaleSetting::C3, 1).d_dt(2.0, 0.25), 0.0, 1e-14);
  // C4 derivative keeps the squared denominator.
  const double x = 2.0, u = 0.1 * x * x;
  EXPECT_NEAR(builtin_scale(ScaleSetting::C4, 1).d_dx(x, 0), 1.0 + (1.0 - u) / ((1.0 + u) * (1.0 + u)), 1e-14);
}

TEST(Scale, TimeInvariantScalesHaveZeroTimeDerivative) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(-10, 10);
  for (auto s : {ScaleSetting::C2, ScaleSetting::C4}) {
    for (int a = 1; a <= 6; ++a) {
      const auto g = builtin_scale(s, a);
      EXPECT_FALSE(g.time_varying());
      for (int k = 0; k < 10; ++k) EXPECT_EQ(g.d_dt(d(rng), d(rng)), 0.0);
    }
  }
  EXPECT_TRUE(builtin_scale(ScaleSetting::C1, 1).time_varying());
  EXPECT_TRUE(builtin_scale(ScaleSetting::C3, 2).time_varying());
}

TEST(Scale, BuiltinExpressions) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> d(-6, 6);
  auto s = [](double t) { return 0.5 * std::sin(2 * kPi * t) + 1.0; };
  auto h = [](double x) { return x + x / (1.0 + 0.1 * x * x); };
  for (int k = 0; k < 50; ++k) {
    const double x = d(rng), t = d(rng);
    EXPECT_NEAR(builtin_scale(ScaleSetting::C2, 3).eval(x, t), std::sin(x) + 2 * x, 1e-12);
    EXPECT_NEAR(builtin_scale(ScaleSetting::C2, 4).eval(x, t), -5 * std::cos(0.2 * x) + 2 * x, 1e-12);
    EXPECT_NEAR(builtin_scale(ScaleSetting::C3, 1).eval(x, t), s(t) * h(x), 1e-12);
    EXPECT_NEAR(builtin_scale(ScaleSetting::C3, 3).eval(x, t), -s(t) * h(x), 1e-12);
    EXPECT_NEAR(builtin_scale(ScaleSetting::C4, 5).eval(x, t), -5 * h(x), 1e-12);
    EXPECT_NEAR(builtin_scale(ScaleSetting::C1, 1).eval(x, t), s(t) * (5 * std::sin(0.2 * x) + 2 * x), 1e-12);
  }
}

TEST(Scale, UnknownBuiltinRejected) {
  EXPECT_THROW(builtin_scale(ScaleSetting::C1, 0), std::out_of_range);
  EXPECT_THROW(builtin_scale(ScaleSetting::C4, 7), std::out_of_range);
  EXPECT_FALSE(parse_scale_setting("C5").has_value());
  EXPECT_EQ(parse_scale_setting("C3"), ScaleSetting::C3);
}

TEST(Scale, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> xd(-20, 20);
  std::uniform_real_distribution<double> td(0, 5);
  std::uniform_int_distribution<int> sd(0, 3), ad(1, 6);
  for (int k = 0; k < 1000; ++k) {
    const auto g = builtin_scale(static_cast<ScaleSetting>(sd(rng)), ad(rng));
    const double x = xd(rng), t = td(rng);
    const double fx = oracle::central_difference([&](double v) { return g.eval(v, t); }, x);
    const double ft = oracle::central_difference([&](double v) { return g.eval(x, v); }, t);
    EXPECT_NEAR(g.d_dx(x, t), fx, 1e-5 * std::max(1.0, std::abs(fx))) << g.expr().str();
    EXPECT_NEAR(g.d_dt(x, t), ft, 1e-5 * std::max(1.0, std::abs(ft))) << g.expr().str();
  }
}

TEST(Scale, C4IsStrictlyMonotone) {
  for (int a = 1; a <= 6; ++a) {
    const auto g = builtin_scale(ScaleSetting::C4, a);
    const double sign = g.d_dx(0, 0) > 0 ? 1.0 : -1.0;
    for (double x = -50; x <= 50; x += 0.01) EXPECT_GT(sign * g.d_dx(x, 0), 0.8);
  }
}

TEST(Scale, ParseScale) {
  const auto g = parse_scale("2*x + sin(t)");
  EXPECT_DOUBLE_EQ(g.d_dx(5, 1), 2.0);
  EXPECT_DOUBLE_EQ(g.d_dt(5, 0), 1.0);
  EXPECT_THROW(parse_scale("2*y"), ExprParseError);
}

}  // namespace
}  // namespace scaledcons
