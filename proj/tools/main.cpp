#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_commands.hpp"

using scaledcons::ALParams;
using scaledcons::OddRatio;
namespace sct = scaledcons::tools;

namespace {

struct LawOptions {
  double rho = 2.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  std::string gamma1 = "1/3";
  std::string gamma2 = "5/3";

  void attach(CLI::App* app) {
    app->add_option("--rho", rho, "proportional gain (0 gives the double-power law)")->capture_default_str();
    app->add_option("--kappa1", kappa1, "finite-time gain")->capture_default_str();
    app->add_option("--kappa2", kappa2, "fixed-time gain")->capture_default_str();
    app->add_option("--gamma1", gamma1, "exponent q/p, q < p, both odd")->capture_default_str();
    app->add_option("--gamma2", gamma2, "exponent m/n, n < m, both odd")->capture_default_str();
  }

  ALParams params() const {
    return ALParams(rho, kappa1, kappa2, OddRatio::parse(gamma1), OddRatio::parse(gamma2));
  }
};

void attach_run_overrides(CLI::App* app, sct::RunOverrides& o, std::string& out_dir) {
  app->add_option("--epsilon", o.epsilon, "consensus band on max pairwise |g_j - g_i|");
  app->add_option("--step", o.step, "RK4 step (s)");
  app->add_option("--horizon", o.horizon, "final time (s)");
  app->add_option("-o,--out-dir", out_dir, "directory for CSV/SVG/report files")->capture_default_str();
  app->add_flag("--csv-only", o.csv_only, "skip the SVG chart");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite/fixed-time scaled consensus: bounds, simulation and reproduction runs"};
  app.require_subcommand(1);

  LawOptions bounds_law;
  double lambda2 = 1.0;
  int agents = 6;
  auto* bounds = app.add_subcommand("bounds", "settling-time bounds of the network-level law");
  bounds_law.attach(bounds);
  bounds->add_option("--lambda2", lambda2, "algebraic connectivity")->capture_default_str();
  bounds->add_option("--agents", agents, "number of agents N")->capture_default_str();

  sct::RunOverrides sim_opts;
  std::string sim_out = ".";
  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "run one scenario config");
  simulate->add_option("config", config_path, "scenario JSON file")->required();
  attach_run_overrides(simulate, sim_opts, sim_out);

  sct::RunOverrides rep_opts;
  std::string rep_out = "reproduce_out";
  std::string which;
  std::string config_dir = SCALEDCONS_DEFAULT_CONFIG_DIR;
  auto* reproduce = app.add_subcommand("reproduce", "run the bundled scenarios of one example");
  reproduce->add_option("which", which, "example1 or example2")
      ->required()
      ->check(CLI::IsMember({"example1", "example2"}));
  reproduce->add_option("--config-dir", config_dir, "directory holding the bundled configs")->capture_default_str();
  attach_run_overrides(reproduce, rep_opts, rep_out);

  LawOptions ode_law;
  std::vector<double> x0s;
  auto* al_ode = app.add_subcommand("al-ode", "integrate the scalar law and compare with its settling bounds");
  ode_law.attach(al_ode);
  al_ode->add_option("--x0", x0s, "initial states (default: +-0.1 +-0.5 +-1 +-10 +-100 +-1e6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? sct::kSuccess : sct::kUsageError;
  }

  try {
    if (*bounds) return sct::cmd_bounds(std::cout, bounds_law.params(), lambda2, agents);
    if (*simulate) {
      sim_opts.out_dir = sim_out;
      return sct::cmd_simulate(std::cout, std::cerr, config_path, sim_opts);
    }
    if (*reproduce) {
      rep_opts.out_dir = rep_out;
      return sct::cmd_reproduce(std::cout, std::cerr, which, config_dir, rep_opts);
    }
    if (*al_ode) {
      return sct::cmd_al_ode(std::cout, ode_law.params(), x0s.empty() ? sct::default_al_ode_states() : x0s);
    }
  } catch (const scaledcons::ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sct::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sct::kNumericalFailure;
  }
  return sct::kUsageError;
}
