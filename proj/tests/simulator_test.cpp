#include "scaledcons/simulator.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "scaledcons/scenario_config.hpp"

namespace scaledcons {
namespace {

const ALParams kGal(2.0, 1.0, 1.0, {1, 3}, {5, 3});

Scenario bundled(const std::string& name) {
  return prepare_scenario(load_scenario_config(std::string(SCALEDCONS_TEST_CONFIG_DIR) + "/" + name + ".json"))
      .scenario;
}

Scenario pair(std::vector<double> x0, double horizon = 2.0) {
  return Scenario{"pair",
                  ProtocolSpec(ProtocolKind::Gal, kGal, Matrix{{0, 1}, {1, 0}}),
                  {identity_scale(), identity_scale()},
                  std::move(x0),
                  {horizon, 1e-4, 1e-3, 1e-3}};
}

Trajectory synthetic(std::vector<double> spread) {
  Trajectory t;
  for (std::size_t k = 0; k < spread.size(); ++k) t.times.push_back(0.1 * static_cast<double>(k));
  t.spread = std::move(spread);
  return t;
}

TEST(Simulate, TwoAgentOddSymmetry) {
  const auto traj = simulate(pair({1.0, -1.0}));
  for (const auto& x : traj.states) EXPECT_NEAR(x[0], -x[1], 1e-9);
  ASSERT_TRUE(traj.settling_time.has_value());
}

TEST(Simulate, TwoAgentLyapunovMatchesHandDoubleSum) {
  const auto s = pair({3.0, -0.5});
  const auto traj = simulate(s);
  const oracle::Dense a{{0, 1}, {1, 0}};
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    EXPECT_NEAR(traj.lyapunov[k], oracle::disagreement_double_sum(a, traj.states[k]), 1e-12);
    const double d = traj.states[k][0] - traj.states[k][1];
    EXPECT_NEAR(traj.lyapunov[k], 0.5 * d * d, 1e-12);
  }
}

TEST(Simulate, TwoAgentSettlesWithinScalarBound) {
  // For a single edge e_1 - e_2 follows the scalar law with gains scaled by 2^gamma.
  const auto traj = simulate(pair({5.0, -5.0}, 3.0));
  const auto t = transformed_params(kGal, 2.0, 2);
  ASSERT_TRUE(traj.settling_time.has_value());
  EXPECT_LE(*traj.settling_time, fixed_time_bounds(t).upper + 1e-3);
}

TEST(Simulate, RecordsOnStrideGrid) {
  const auto traj = simulate(pair({1.0, 0.0}, 0.5));
  ASSERT_EQ(traj.samples(), 501u);
  EXPECT_EQ(traj.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(traj.times.back(), 0.5);
  EXPECT_EQ(traj.states.front(), (std::vector<double>{1.0, 0.0}));
}

TEST(Simulate, ConsensusInitialConditionStaysPut) {
  const auto s = pair({2.0, 2.0}, 0.1);
  const auto traj = simulate(s);
  for (double v : traj.lyapunov) EXPECT_EQ(v, 0.0);
  for (double v : lyapunov_series(s, traj).values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(traj.settling_time, 0.0);
}

TEST(Simulate, Deterministic) {
  const auto s = bundled("example1_c1_gal");
  const auto a = simulate(s);
  const auto b = simulate(s);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.lyapunov, b.lyapunov);
  EXPECT_EQ(a.settling_time, b.settling_time);
}

TEST(Simulate, HalvingStepBarelyMovesSettlingTime) {
  auto s = bundled("example1_c1_gal");
  s.settings.horizon = 3.0;
  const auto coarse = simulate(s);
  s.settings.step /= 2.0;
  const auto fine = simulate(s);
  ASSERT_TRUE(coarse.settling_time && fine.settling_time);
  EXPECT_LE(std::abs(*coarse.settling_time - *fine.settling_time), 2.0 * s.settings.record_stride);
}

TEST(Simulate, Example1C1GalWithinBound) {
  const auto traj = simulate(bundled("example1_c1_gal"));
  ASSERT_TRUE(traj.settling_time.has_value());
  EXPECT_LE(*traj.settling_time, 1.96);
}

TEST(Simulate, Example2C3GalWithinBounds) {
  const auto traj = simulate(bundled("example2_c3_gal"));
  ASSERT_TRUE(traj.settling_time.has_value());
  EXPECT_GT(*traj.settling_time, 0.87 - 0.05);
  EXPECT_LE(*traj.settling_time, 2.09);
}

TEST(Simulate, LyapunovNonincreasingOutsideBand) {
  const auto s = bundled("example1_c2_gal");
  const auto traj = simulate(s);
  const auto series = lyapunov_series(s, traj);
  ASSERT_EQ(series.values, traj.lyapunov);
  for (std::size_t k = 0; k + 1 < traj.samples(); ++k) {
    if (traj.spread[k] <= s.settings.epsilon) continue;
    EXPECT_LE(traj.lyapunov[k + 1], traj.lyapunov[k] * (1.0 + 1e-9)) << "t=" << traj.times[k];
    EXPECT_LE(series.slopes[k], 1e-9 * traj.lyapunov[k] / s.settings.record_stride);
  }
}

TEST(Simulate, RejectsBadScenario) {
  auto s = pair({1.0});
  EXPECT_THROW(simulate(s), std::invalid_argument);
  s = pair({1.0, 0.0});
  s.settings.step = 0.0;
  EXPECT_THROW(simulate(s), std::invalid_argument);
  s = pair({1.0, NAN});
  EXPECT_THROW(simulate(s), std::invalid_argument);
  Scenario disconnected{"d",
                        ProtocolSpec(ProtocolKind::Gal, kGal, Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}),
                        std::vector<ScaleFunction>(3, identity_scale()),
                        {1, 2, 3},
                        {}};
  EXPECT_THROW(simulate(disconnected), GraphError);
}

TEST(Simulate, GuardViolationPropagates) {
  Scenario s{"guard",
             ProtocolSpec(ProtocolKind::Gal, kGal, Matrix{{0, 1}, {1, 0}}),
             {identity_scale(), parse_scale("x^3")},
             {1.0, 0.0},
             {1.0, 1e-3, 1e-3, 1e-3}};
  EXPECT_THROW(simulate(s), DerivativeGuardError);
}

TEST(MeasureSettling, InsideFromStart) {
  EXPECT_EQ(measure_settling(synthetic({0.0, 0.0, 0.0}), 1e-3), 0.0);
}

TEST(MeasureSettling, ReentryCountsLastEntry) {
  const auto t = measure_settling(synthetic({1.0, 1e-4, 1.0, 1.0, 1e-4, 1e-5, 0.0}), 1e-3);
  ASSERT_TRUE(t.has_value());
  EXPECT_DOUBLE_EQ(*t, 0.4);
}

TEST(MeasureSettling, NeverSettled) {
  EXPECT_FALSE(measure_settling(synthetic({1.0, 0.0, 1.0}), 1e-3).has_value());
  EXPECT_EQ(measure_settling(synthetic({1.0, 1e-3}), 1e-3), 0.1);
}

TEST(Spread, PlainAndAbsolute) {
  const std::vector<double> v{-2.0, 1.0, 2.0};
  EXPECT_EQ(max_pairwise_spread(v), 4.0);
  EXPECT_EQ(max_pairwise_abs_spread(v), 1.0);
}

TEST(WriteCsv, HeaderAndRows) {
  const auto traj = simulate(pair({1.0, 0.0}, 0.002));
  std::ostringstream out;
  write_csv(out, traj);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,x_1,x_2,g_1,g_2,V");
  std::getline(in, line);
  EXPECT_EQ(line, "0,1,0,1,0,0.5");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace scaledcons
