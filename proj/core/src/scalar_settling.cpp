#include "scaledcons/scalar_settling.hpp"

#include <algorithm>
#include <cmath>

namespace scaledcons {

namespace {

double rk4_step(const ALParams& p, double x, double h) {
  const double k1 = al_rhs(p, x);
  const double k2 = al_rhs(p, x + 0.5 * h * k1);
  const double k3 = al_rhs(p, x + 0.5 * h * k2);
  const double k4 = al_rhs(p, x + h * k3);
  return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

ScalarSettlingResult integrate_settling_time(const ALParams& params, double x0,
                                             const ScalarSettlingOptions& opts) {
  const double characteristic = fixed_time_bounds(params).upper;
  ScalarSettlingResult out;
  out.base_step = opts.base_step_scale * std::max(1.0, characteristic);
  const double horizon = opts.horizon > 0.0 ? opts.horizon : 10.0 * characteristic + 1.0;

  double x = x0;
  double t = 0.0;
  std::optional<double> entered;
  int inside_steps = 0;
  if (std::abs(x) <= opts.band) entered = 0.0;

  while (t < horizon) {
    if (entered && inside_steps >= opts.stay_steps) break;
    if (x == 0.0) {
      if (!entered) entered = t;
      break;
    }
    const double local = std::abs(x / al_rhs(params, x));
    const double h = std::min(out.base_step, opts.local_fraction * local);
    x = rk4_step(params, x, h);
    t += h;
    ++out.steps;

    if (std::abs(x) <= opts.band) {
      if (!entered) {
        entered = t;
        inside_steps = 0;
      }
      ++inside_steps;
    } else {
      entered.reset();
    }
  }
  out.settling_time = entered;
  return out;
}

}  // namespace scaledcons
