#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scaledcons/attracting_law.hpp"
#include "scaledcons/graph.hpp"
#include "scaledcons/simulator.hpp"

namespace scaledcons {

/// Error carrying the offending field path (e.g. "protocol.kappa1") or a
/// "line L, column C" location for syntax errors.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::invalid_argument(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct ScaleEntry {
  /// Either a built-in setting name ("C1".."C4") with a 1-based agent index,
  /// or an expression string.
  std::string builtin;
  int agent = 0;
  std::string expr;

  friend bool operator==(const ScaleEntry&, const ScaleEntry&) = default;
};

struct GraphBlock {
  bool directed = false;
  std::vector<std::vector<double>> weights;
  /// Optional user-supplied balance vector for a directed graph.
  std::optional<std::vector<double>> detail_balance;

  friend bool operator==(const GraphBlock&, const GraphBlock&) = default;
};

struct ProtocolBlock {
  std::string kind = "gal";
  double rho = 0.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  int q = 1, p = 3, m = 5, n = 3;

  friend bool operator==(const ProtocolBlock&, const ProtocolBlock&) = default;
};

struct RunBlock {
  std::vector<double> x0;
  IntegratorSettings settings;
  std::string output;

  friend bool operator==(const RunBlock& a, const RunBlock& b) {
    return a.x0 == b.x0 && a.output == b.output && a.settings.horizon == b.settings.horizon &&
           a.settings.step == b.settings.step && a.settings.epsilon == b.settings.epsilon &&
           a.settings.record_stride == b.settings.record_stride;
  }
};

/// Published values to print next to the computed ones.
struct ReferenceBlock {
  std::optional<double> lambda2;
  std::optional<double> lower;
  std::optional<double> upper;
  double tolerance = 0.01;

  friend bool operator==(const ReferenceBlock&, const ReferenceBlock&) = default;
};

struct ScenarioConfig {
  std::string name;
  GraphBlock graph;
  ProtocolBlock protocol;
  std::vector<ScaleEntry> scales;
  RunBlock run;
  std::optional<ReferenceBlock> reference;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses a JSON scenario document. The "scales" field accepts an array of
/// {"builtin": "C1", "agent": 1} / {"expr": "..."} objects, or a single
/// setting name applied to agents 1..N.
ScenarioConfig parse_scenario_config(std::string_view text);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);
std::string dump_scenario_config(const ScenarioConfig& cfg);

/// Everything derived from a config before integration.
struct PreparedScenario {
  Scenario scenario;
  WeightedGraph graph;
  /// Balance vector actually used for the mirror weights (directed graphs).
  std::optional<DetailBalance> balance;
  /// Analysis of the Laplacian of the coupling weights (mirror weights for
  /// directed graphs, |a_ij| for signed ones).
  LaplacianAnalysis analysis;
  ALParams base_params;
  /// Rates of the scalar law bounding sqrt(V); absent for the signed law.
  std::optional<ALParams> transformed;
  std::optional<SettlingBounds> bounds;
};

/// Builds and validates the scenario. For directed graphs the detail-balance
/// vector is taken from the config when present, otherwise detected and
/// rescaled to coprime integers when its ratios are rational.
/// Throws ConfigError / GraphError / ParamError.
PreparedScenario prepare_scenario(const ScenarioConfig& cfg);

ScaleFunction make_scale(const ScaleEntry& entry);

}  // namespace scaledcons
