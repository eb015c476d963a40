#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scaledcons/attracting_law.hpp"
#include "scaledcons/scenario_config.hpp"

namespace scaledcons::tools {

/// Process exit codes.
enum ExitCode : int { kSuccess = 0, kUsageError = 1, kNumericalFailure = 2 };

struct RunOverrides {
  std::optional<double> epsilon;
  std::optional<double> step;
  std::optional<double> horizon;
  std::filesystem::path out_dir = ".";
  bool csv_only = false;
  bool write_files = true;
};

struct RunReport {
  std::string name;
  std::string protocol;
  std::size_t agents = 0;
  double lambda2 = 0.0;
  std::optional<std::vector<double>> balance;
  std::optional<ALParams> transformed;
  std::optional<SettlingBounds> bounds;
  std::optional<double> settling_time;
  double record_stride = 0.0;
  double epsilon = 0.0;
  std::optional<ReferenceBlock> reference;
  std::vector<double> final_states;
  std::vector<double> final_scaled;
  std::string csv_path;
  std::string svg_path;
  /// Measured settling <= upper bound + one record stride (signed law: settled).
  bool pass = false;
};

/// Applies overrides, simulates, writes CSV (and SVG unless csv_only) and
/// returns the report. Propagates config, graph and numerical errors.
RunReport run_scenario(const ScenarioConfig& cfg, const RunOverrides& overrides);

void print_report(std::ostream& out, const RunReport& r);

/// Fixed-time bound table for a law on a network with the given lambda2 and
/// agent count: transformed rates plus the three-term and rho = 0 bounds.
int cmd_bounds(std::ostream& out, const ALParams& params, double lambda2, int agents);

int cmd_simulate(std::ostream& out, std::ostream& err, const std::filesystem::path& config,
                 const RunOverrides& overrides);

/// Bundled config names of one reproduction batch ("example1" / "example2").
std::vector<std::string> reproduction_configs(const std::string& which);

int cmd_reproduce(std::ostream& out, std::ostream& err, const std::string& which,
                  const std::filesystem::path& config_dir, const RunOverrides& overrides);

/// Integrates the scalar law from each x0 and compares the measured settling
/// time with the closed-form interval (slack: two base steps).
int cmd_al_ode(std::ostream& out, const ALParams& params, const std::vector<double>& x0s);

std::vector<double> default_al_ode_states();

}  // namespace scaledcons::tools
