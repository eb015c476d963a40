#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scaledcons/protocol.hpp"
#include "scaledcons/scales.hpp"

namespace scaledcons {

struct IntegratorSettings {
  double horizon = 5.0;
  double step = 1e-4;
  double epsilon = 1e-3;
  double record_stride = 1e-3;
};

/// Closed-loop experiment: x_i' = u_i under `protocol`, started at x0.
struct Scenario {
  std::string name;
  ProtocolSpec protocol;
  std::vector<ScaleFunction> scales;
  std::vector<double> x0;
  IntegratorSettings settings;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::vector<double>> scaled_states;
  std::vector<double> lyapunov;
  /// Consensus spread per sample: max pairwise |g_j - g_i|, or
  /// max pairwise ||g_j| - |g_i|| for the signed protocol.
  std::vector<double> spread;
  std::optional<double> settling_time;

  std::size_t samples() const { return times.size(); }
};

class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, double time, std::vector<double> last_state)
      : std::runtime_error(what), time_(time), last_state_(std::move(last_state)) {}
  double time() const { return time_; }
  const std::vector<double>& last_state() const { return last_state_; }

 private:
  double time_;
  std::vector<double> last_state_;
};

/// Fixed-step classical RK4 over [0, horizon]. The protocol is evaluated at
/// every stage with the stage's own time, so time-varying scales are
/// sampled at t, t + h/2 and t + h. A sample is recorded every
/// round(record_stride / step) steps (and at t = 0).
///
/// Throws DerivativeGuardError (from the protocol) or SimulationError on a
/// non-finite state.
Trajectory simulate(const Scenario& s);

double max_pairwise_spread(std::span<const double> values);
double max_pairwise_abs_spread(std::span<const double> values);

/// Earliest sample time after which every sample's spread stays <= epsilon.
std::optional<double> measure_settling(const Trajectory& traj, double epsilon);

struct LyapunovSeries {
  std::vector<double> values;
  /// Forward difference (V[k+1] - V[k]) / (t[k+1] - t[k]); one shorter than values.
  std::vector<double> slopes;
};

/// Recomputes V at every sample from the recorded states.
LyapunovSeries lyapunov_series(const Scenario& s, const Trajectory& traj);

/// Header `t,x_1..x_n,g_1..g_n,V`, one row per sample, 9 significant digits.
void write_csv(std::ostream& out, const Trajectory& traj);

}  // namespace scaledcons
