#pragma once

#include <cstddef>
#include <optional>

#include "scaledcons/attracting_law.hpp"

namespace scaledcons {

struct ScalarSettlingOptions {
  /// Base RK4 step is base_step_scale * max(1, characteristic time), where the
  /// characteristic time is the fixed-time upper bound of the law.
  double base_step_scale = 1e-4;
  /// Settled once |x| <= band and it stays there.
  double band = 1e-9;
  /// The step never exceeds this fraction of the local time scale |x / x'|,
  /// which refines the step near the origin where the finite-time term has
  /// unbounded slope, and near huge |x| where the fixed-time term dominates.
  double local_fraction = 0.05;
  /// Steps checked after band entry to confirm the trajectory stays inside.
  int stay_steps = 200;
  /// 0 selects 10 * characteristic time + 1.
  double horizon = 0.0;
};

struct ScalarSettlingResult {
  std::optional<double> settling_time;
  double base_step = 0.0;
  std::size_t steps = 0;
};

/// Integrates x' = al_rhs(x) from x0 with classical RK4 and reports the first
/// time after which |x| stays within the band.
ScalarSettlingResult integrate_settling_time(const ALParams& params, double x0,
                                             const ScalarSettlingOptions& opts = {});

}  // namespace scaledcons
