#include "scaledcons/protocol.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "example_data.hpp"
#include "scaledcons/graph.hpp"

namespace scaledcons {
namespace {

const ALParams kGal(2.0, 1.0, 1.0, {1, 3}, {5, 3});

std::vector<ScaleFunction> identity_scales(std::size_t n) { return {n, identity_scale()}; }

std::vector<ScaleFunction> setting(ScaleSetting s) {
  std::vector<ScaleFunction> out;
  for (int a = 1; a <= 6; ++a) out.push_back(builtin_scale(s, a));
  return out;
}

TEST(ProtocolSpec, Validation) {
  EXPECT_THROW(ProtocolSpec(ProtocolKind::Gal, kGal, Matrix{{0, 1}, {2, 0}}), std::invalid_argument);
  EXPECT_THROW(ProtocolSpec(ProtocolKind::Gal, kGal, Matrix{{1, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(ProtocolSpec(ProtocolKind::Gal, kGal, Matrix{{0, -1}, {-1, 0}}), std::invalid_argument);
  EXPECT_NO_THROW(ProtocolSpec(ProtocolKind::SignedGal, kGal, Matrix{{0, -1}, {-1, 0}}));
  EXPECT_EQ(ProtocolSpec(ProtocolKind::DoublePower, kGal, Matrix{{0, 1}, {1, 0}}).params().rho(), 0.0);
}

TEST(ProtocolKind, Names) {
  for (auto k : {ProtocolKind::Gal, ProtocolKind::DoublePower, ProtocolKind::SignedGal})
    EXPECT_EQ(parse_protocol_kind(to_string(k)), k);
  EXPECT_EQ(parse_protocol_kind("dp"), ProtocolKind::DoublePower);
  EXPECT_THROW(parse_protocol_kind("pid"), std::invalid_argument);
}

TEST(Control, TwoAgentHandValues) {
  const ProtocolSpec spec(ProtocolKind::Gal, kGal, Matrix{{0, 1}, {1, 0}});
  const std::vector<double> x{1, 0};
  const auto e = coupling_errors(spec, x);
  EXPECT_EQ(e[0], -1.0);
  EXPECT_EQ(e[1], 1.0);
  const auto u = control(spec, identity_scales(2), x, 0.0);
  EXPECT_DOUBLE_EQ(u[0], -4.0);
  EXPECT_DOUBLE_EQ(u[1], 4.0);
}

TEST(Control, ZeroAtConsensus) {
  const ProtocolSpec spec(ProtocolKind::Gal, kGal, testdata::example1_weights());
  const std::vector<double> x(6, 3.25);
  for (double v : control(spec, identity_scales(6), x, 1.7)) EXPECT_EQ(v, 0.0);
  for (double v : coupling_errors(spec, x)) EXPECT_EQ(v, 0.0);
}

TEST(Control, SignedEqualsGalOnNonnegativeWeights) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> xd(-20, 20), td(0, 3);
  const ProtocolSpec gal(ProtocolKind::Gal, kGal, testdata::example1_weights());
  const ProtocolSpec sgn(ProtocolKind::SignedGal, kGal, testdata::example1_weights());
  const auto scales = setting(ScaleSetting::C1);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x(6);
    for (auto& v : x) v = xd(rng);
    const double t = td(rng);
    EXPECT_EQ(control(gal, scales, x, t), control(sgn, scales, x, t));
  }
}

TEST(Control, GalWithZeroRhoEqualsDoublePower) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> xd(-20, 20), td(0, 3);
  const ProtocolSpec gal(ProtocolKind::Gal, kGal.with_rho(0.0), testdata::example1_weights());
  const ProtocolSpec dp(ProtocolKind::DoublePower, kGal, testdata::example1_weights());
  const auto scales = setting(ScaleSetting::C2);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x(6);
    for (auto& v : x) v = xd(rng);
    const double t = td(rng);
    EXPECT_EQ(control(gal, scales, x, t), control(dp, scales, x, t));
  }
}

TEST(Control, ShiftingAllScaledStatesLeavesControlUnchanged) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> xd(-5, 5);
  const ProtocolSpec spec(ProtocolKind::Gal, kGal, testdata::example1_weights());
  const auto scales = identity_scales(6);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> x(6), shifted(6);
    const double c = 0.5 * k;  // dyadic, so the shift is exact
    for (std::size_t i = 0; i < 6; ++i) {
      x[i] = std::ldexp(std::round(xd(rng) * 64), -6);
      shifted[i] = x[i] + c;
    }
    EXPECT_EQ(control(spec, scales, x, 0.0), control(spec, scales, shifted, 0.0));
  }
}

TEST(Control, ClosedLoopScaledStateFollowsAttractingLaw) {
  // With the time-derivative feedforward, d g_i / dt = dg/dx * u + dg/dt = phi(e_i).
  const ProtocolSpec spec(ProtocolKind::Gal, kGal, testdata::example1_weights());
  const auto scales = setting(ScaleSetting::C1);
  const std::vector<double> x(std::begin(testdata::kExample1X0), std::end(testdata::kExample1X0));
  const double t = 0.3;
  const auto u = control(spec, scales, x, t);
  const auto g = scaled_states(scales, x, t);
  const auto e = coupling_errors(spec, g);
  for (std::size_t i = 0; i < 6; ++i) {
    const double gdot = scales[i].d_dx(x[i], t) * u[i] + scales[i].d_dt(x[i], t);
    EXPECT_NEAR(gdot, -al_rhs(kGal, e[i]), 1e-9 * (1.0 + std::abs(gdot)));
  }
}

TEST(Control, DerivativeGuard) {
  const ProtocolSpec spec(ProtocolKind::Gal, kGal, Matrix{{0, 1}, {1, 0}});
  const std::vector<ScaleFunction> scales{identity_scale(), parse_scale("x^3")};
  const std::vector<double> x{1.0, 0.0};
  try {
    control(spec, scales, x, 0.5);
    FAIL();
  } catch (const DerivativeGuardError& e) {
    EXPECT_EQ(e.agent(), 1u);
    EXPECT_EQ(e.time(), 0.5);
    EXPECT_EQ(e.state(), 0.0);
  }
}

TEST(SignedProtocol, AntagonisticEdgeDrivesOppositeValues) {
  const ProtocolSpec spec(ProtocolKind::SignedGal, kGal, Matrix{{0, -1}, {-1, 0}});
  // Opposite values form the signed equilibrium.
  const std::vector<double> g{2.0, -2.0};
  for (double v : coupling_errors(spec, g)) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(disagreement(spec, g), 0.0);
  const std::vector<double> h{1.0, 1.0};
  EXPECT_EQ(coupling_errors(spec, h)[0], -2.0);
  EXPECT_DOUBLE_EQ(disagreement(spec, h), 2.0);
}

TEST(Disagreement, TwoAgentHandValue) {
  const ProtocolSpec spec(ProtocolKind::Gal, kGal, Matrix{{0, 1}, {1, 0}});
  const std::vector<double> g{1.0, 0.0};
  EXPECT_DOUBLE_EQ(disagreement(spec, g), 0.5);
  EXPECT_DOUBLE_EQ(0.5 * quadratic_form(laplacian(spec.weights()), g), 0.5);
}

TEST(Disagreement, ZeroAtConsensus) {
  const ProtocolSpec spec(ProtocolKind::Gal, kGal, testdata::example1_weights());
  EXPECT_EQ(disagreement(spec, std::vector<double>(6, -4.0)), 0.0);
}

TEST(Disagreement, MatchesDoubleSumAndQuadraticForm) {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> nd(0, 10);
  for (int k = 0; k < 50; ++k) {
    const auto dense = oracle::random_connected_graph(7, rng);
    const ProtocolSpec spec(ProtocolKind::Gal, kGal, Matrix::from_rows(dense));
    std::vector<double> g(7);
    for (auto& v : g) v = nd(rng);
    const double v = disagreement(spec, g);
    EXPECT_NEAR(v, oracle::disagreement_double_sum(dense, g), 1e-10 * (1 + v));
    EXPECT_NEAR(v, 0.5 * quadratic_form(laplacian(spec.weights()), g), 1e-9 * (1 + v));
  }
}

TEST(Disagreement, Example1C2InitialValue) {
  const ProtocolSpec spec(ProtocolKind::Gal, kGal, testdata::example1_weights());
  const auto scales = setting(ScaleSetting::C2);
  const std::vector<double> x(std::begin(testdata::kExample1X0), std::end(testdata::kExample1X0));
  const auto g = scaled_states(scales, x, 0.0);
  const std::vector<double> expected_g{-33.78739778352574, -72.43197504692071, -9.041075725336862,
                                       7.298488470659301,  86.53643620863612,  35.33968329175592};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(g[i], expected_g[i], 1e-12);
  const double v = disagreement(spec, scales, x, 0.0);
  EXPECT_NEAR(v, oracle::disagreement_double_sum(testdata::example1_weights().to_rows(), g), 1e-9);
  EXPECT_NEAR(v, 15077.626549337267, 1e-8);
}

}  // namespace
}  // namespace scaledcons
