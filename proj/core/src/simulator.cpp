#include "scaledcons/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "scaledcons/graph.hpp"

namespace scaledcons {

void Scenario::validate() const {
  const auto& st = settings;
  if (!(st.step > 0.0)) throw std::invalid_argument("step must be > 0");
  if (!(st.horizon >= st.step)) throw std::invalid_argument("horizon must be >= step");
  if (!(st.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(st.record_stride > 0.0)) throw std::invalid_argument("record_stride must be > 0");
  if (x0.size() != protocol.size()) {
    throw std::invalid_argument("x0 has " + std::to_string(x0.size()) + " entries for " +
                                std::to_string(protocol.size()) + " agents");
  }
  if (scales.size() != protocol.size()) {
    throw std::invalid_argument("scales has " + std::to_string(scales.size()) + " entries for " +
                                std::to_string(protocol.size()) + " agents");
  }
  for (double v : x0)
    if (!std::isfinite(v)) throw std::invalid_argument("x0 must be finite");
  if (!is_connected(protocol.weights(), false)) throw GraphError("interaction graph is not connected");
}

double max_pairwise_spread(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

double max_pairwise_abs_spread(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double lo = std::abs(values[0]);
  double hi = lo;
  for (double v : values) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  return hi - lo;
}

namespace {

class ClosedLoop {
 public:
  explicit ClosedLoop(const Scenario& s)
      : s_(s), n_(s.x0.size()), k1_(n_), k2_(n_), k3_(n_), k4_(n_), tmp_(n_) {}

  void step(std::vector<double>& x, double t, double h) {
    control(s_.protocol, s_.scales, x, t, k1_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + 0.5 * h * k1_[i];
    control(s_.protocol, s_.scales, tmp_, t + 0.5 * h, k2_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + 0.5 * h * k2_[i];
    control(s_.protocol, s_.scales, tmp_, t + 0.5 * h, k3_);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + h * k3_[i];
    control(s_.protocol, s_.scales, tmp_, t + h, k4_);
    for (std::size_t i = 0; i < n_; ++i) x[i] += h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  const Scenario& s_;
  std::size_t n_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace

Trajectory simulate(const Scenario& s) {
  s.validate();
  const auto& st = s.settings;
  const auto steps = static_cast<long long>(std::llround(st.horizon / st.step));
  const long long stride = std::max(1LL, static_cast<long long>(std::llround(st.record_stride / st.step)));
  const bool signed_law = s.protocol.kind() == ProtocolKind::SignedGal;

  Trajectory traj;
  const auto reserve = static_cast<std::size_t>(steps / stride + 2);
  traj.times.reserve(reserve);
  traj.states.reserve(reserve);
  traj.scaled_states.reserve(reserve);

  auto record = [&](const std::vector<double>& x, double t) {
    auto g = scaled_states(s.scales, x, t);
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.lyapunov.push_back(disagreement(s.protocol, g));
    traj.spread.push_back(signed_law ? max_pairwise_abs_spread(g) : max_pairwise_spread(g));
    traj.scaled_states.push_back(std::move(g));
  };

  std::vector<double> x = s.x0;
  ClosedLoop loop(s);
  record(x, 0.0);
  for (long long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * st.step;
    loop.step(x, t, st.step);
    const double t_next = static_cast<double>(k + 1) * st.step;
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
      throw SimulationError("non-finite state at t = " + std::to_string(t_next), t_next,
                            traj.states.empty() ? s.x0 : traj.states.back());
    }
    if ((k + 1) % stride == 0 || k + 1 == steps) record(x, t_next);
  }
  traj.settling_time = measure_settling(traj, st.epsilon);
  return traj;
}

std::optional<double> measure_settling(const Trajectory& traj, double epsilon) {
  std::optional<double> since;
  for (std::size_t k = traj.spread.size(); k-- > 0;) {
    if (traj.spread[k] > epsilon) break;
    since = traj.times[k];
  }
  return since;
}

LyapunovSeries lyapunov_series(const Scenario& s, const Trajectory& traj) {
  LyapunovSeries out;
  out.values.reserve(traj.samples());
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    out.values.push_back(disagreement(s.protocol, s.scales, traj.states[k], traj.times[k]));
  }
  for (std::size_t k = 0; k + 1 < out.values.size(); ++k) {
    out.slopes.push_back((out.values[k + 1] - out.values[k]) / (traj.times[k + 1] - traj.times[k]));
  }
  return out;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",g_" << i;
  out << ",V\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out << buf;
  };
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    put(traj.times[k]);
    for (double v : traj.states[k]) {
      out << ',';
      put(v);
    }
    for (double v : traj.scaled_states[k]) {
      out << ',';
      put(v);
    }
    out << ',';
    put(traj.lyapunov[k]);
    out << '\n';
  }
}

}  // namespace scaledcons
