#pragma once

#include <ostream>
#include <string>

#include "scaledcons/simulator.hpp"

namespace scaledcons::tools {

/// Minimal line chart of the scaled states g_i(t), one polyline per agent.
void write_scaled_state_svg(std::ostream& out, const Trajectory& traj, const std::string& title);

}  // namespace scaledcons::tools
