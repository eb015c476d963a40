#include "cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>

#include "scaledcons/scalar_settling.hpp"
#include "scaledcons/simulator.hpp"
#include "svg_plot.hpp"

namespace scaledcons::tools {

namespace {

std::string num(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string fixed(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string vec(const std::vector<double>& v, int digits = 6) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + num(v[i], digits);
  return out;
}

std::string published(const std::optional<double>& ref, double tol) {
  return ref ? "  (published " + num(*ref) + ", tol " + num(tol) + ")" : "";
}

void print_bound_rows(std::ostream& out, const std::string& label, const ALParams& p) {
  const auto b = fixed_time_bounds(p);
  out << pad(label, 16) << pad("lower " + fixed(b.lower, 4), 16) << "upper " << fixed(b.upper, 4) << "\n";
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& base_cfg, const RunOverrides& overrides) {
  ScenarioConfig cfg = base_cfg;
  auto& st = cfg.run.settings;
  if (overrides.epsilon) st.epsilon = *overrides.epsilon;
  if (overrides.step) st.step = *overrides.step;
  if (overrides.horizon) st.horizon = *overrides.horizon;

  const PreparedScenario prepared = prepare_scenario(cfg);
  const Trajectory traj = simulate(prepared.scenario);

  RunReport r;
  r.name = cfg.name.empty() ? "scenario" : cfg.name;
  r.protocol = cfg.protocol.kind;
  r.agents = prepared.graph.size();
  r.lambda2 = prepared.analysis.lambda2;
  if (prepared.balance) r.balance = prepared.balance->params;
  r.transformed = prepared.transformed;
  r.bounds = prepared.bounds;
  r.settling_time = traj.settling_time;
  r.record_stride = st.record_stride;
  r.epsilon = st.epsilon;
  r.reference = cfg.reference;
  r.final_states = traj.states.back();
  r.final_scaled = traj.scaled_states.back();
  if (r.bounds) {
    r.pass = r.settling_time && *r.settling_time <= r.bounds->upper + r.record_stride;
  } else {
    r.pass = r.settling_time.has_value();
  }

  if (overrides.write_files) {
    std::filesystem::create_directories(overrides.out_dir);
    const std::string stem = cfg.run.output.empty() ? r.name : std::filesystem::path(cfg.run.output).stem().string();
    const auto csv = overrides.out_dir / (stem + ".csv");
    std::ofstream csv_out(csv);
    if (!csv_out) throw std::runtime_error("cannot write " + csv.string());
    write_csv(csv_out, traj);
    r.csv_path = csv.string();
    if (!overrides.csv_only) {
      const auto svg = overrides.out_dir / (stem + ".svg");
      std::ofstream svg_out(svg);
      if (!svg_out) throw std::runtime_error("cannot write " + svg.string());
      write_scaled_state_svg(svg_out, traj, r.name + ": scaled states g_i(t)");
      r.svg_path = svg.string();
    }
    std::ofstream rep(overrides.out_dir / (stem + ".report.txt"));
    print_report(rep, r);
  }
  return r;
}

void print_report(std::ostream& out, const RunReport& r) {
  const double tol = r.reference ? r.reference->tolerance : 0.0;
  const auto ref = r.reference.value_or(ReferenceBlock{});
  out << pad("scenario", 16) << r.name << "\n";
  out << pad("protocol", 16) << r.protocol << "\n";
  out << pad("agents", 16) << r.agents << "\n";
  out << pad("lambda2", 16) << fixed(r.lambda2, 6) << published(ref.lambda2, tol) << "\n";
  if (r.balance) out << pad("detail_balance", 16) << vec(*r.balance) << "\n";
  if (r.transformed) {
    out << pad("rho'", 16) << num(r.transformed->rho(), 9) << "\n";
    out << pad("kappa1'", 16) << num(r.transformed->kappa1(), 9) << "\n";
    out << pad("kappa2'", 16) << num(r.transformed->kappa2(), 9) << "\n";
  }
  if (r.bounds) {
    out << pad("bound.lower", 16) << fixed(r.bounds->lower, 4) << published(ref.lower, tol) << "\n";
    out << pad("bound.upper", 16) << fixed(r.bounds->upper, 4) << published(ref.upper, tol) << "\n";
  }
  out << pad("epsilon", 16) << num(r.epsilon) << "\n";
  out << pad("settling_time", 16) << (r.settling_time ? fixed(*r.settling_time, 4) : "not settled") << "\n";
  if (r.bounds && r.settling_time) {
    out << pad("lower_compare", 16) << (*r.settling_time >= r.bounds->lower ? "above lower bound" : "below lower bound")
        << " (informative)\n";
  }
  out << pad("final_x", 16) << vec(r.final_states) << "\n";
  out << pad("final_g", 16) << vec(r.final_scaled) << "\n";
  if (!r.csv_path.empty()) out << pad("csv", 16) << r.csv_path << "\n";
  if (!r.svg_path.empty()) out << pad("svg", 16) << r.svg_path << "\n";
  out << pad("verdict", 16) << (r.pass ? "PASS" : "FAIL") << "\n";
}

int cmd_bounds(std::ostream& out, const ALParams& params, double lambda2, int agents) {
  const ALParams gal = transformed_params(params, lambda2, agents);
  const ALParams dp = gal.with_rho(0.0);
  out << "law             rho=" << num(params.rho()) << " kappa1=" << num(params.kappa1())
      << " kappa2=" << num(params.kappa2()) << " gamma1=" << params.gamma1_ratio().str()
      << " gamma2=" << params.gamma2_ratio().str() << "\n";
  out << "network         lambda2=" << num(lambda2) << " N=" << agents << "\n";
  out << "rho'            " << num(gal.rho(), 9) << "\n";
  out << "kappa1'         " << num(gal.kappa1(), 9) << "\n";
  out << "kappa2'         " << num(gal.kappa2(), 9) << "\n";
  if (params.rho() > 0.0) {
    print_bound_rows(out, "gal", gal);
  } else {
    out << "gal             (rho = 0: same as double_power)\n";
  }
  print_bound_rows(out, "double_power", dp);
  return kSuccess;
}

int cmd_simulate(std::ostream& out, std::ostream& err, const std::filesystem::path& config,
                 const RunOverrides& overrides) {
  ScenarioConfig cfg;
  try {
    cfg = load_scenario_config(config);
    if (cfg.name.empty()) cfg.name = config.stem().string();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  try {
    const RunReport r = run_scenario(cfg, overrides);
    print_report(out, r);
    return r.pass ? kSuccess : kNumericalFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParamError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

std::vector<std::string> reproduction_configs(const std::string& which) {
  if (which == "example1") {
    return {"example1_c1_dp", "example1_c1_gal", "example1_c2_dp", "example1_c2_gal"};
  }
  if (which == "example2") {
    return {"example2_c3_dp", "example2_c3_gal", "example2_c4_dp", "example2_c4_gal"};
  }
  throw std::invalid_argument("unknown example '" + which + "' (expected example1 or example2)");
}

int cmd_reproduce(std::ostream& out, std::ostream& err, const std::string& which,
                  const std::filesystem::path& config_dir, const RunOverrides& overrides) {
  std::vector<std::string> names;
  try {
    names = reproduction_configs(which);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  struct Outcome {
    std::optional<RunReport> report;
    std::string error;
  };
  std::vector<std::future<Outcome>> jobs;
  for (const auto& name : names) {
    jobs.push_back(std::async(std::launch::async, [&, name] {
      Outcome o;
      try {
        auto cfg = load_scenario_config(config_dir / (name + ".json"));
        if (cfg.name.empty()) cfg.name = name;
        o.report = run_scenario(cfg, overrides);
      } catch (const std::exception& e) {
        o.error = e.what();
      }
      return o;
    }));
  }

  std::vector<Outcome> outcomes;
  for (auto& j : jobs) outcomes.push_back(j.get());

  bool all_pass = true;
  out << pad("scenario", 18) << pad("lambda2", 10) << pad("T_lower", 9) << pad("T_upper", 9) << pad("published", 14)
      << pad("settling", 10) << "verdict\n";
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto& o = outcomes[k];
    if (!o.report) {
      all_pass = false;
      out << pad(names[k], 18) << "ERROR " << o.error << "\n";
      continue;
    }
    const auto& r = *o.report;
    all_pass = all_pass && r.pass;
    std::string pub = "-";
    if (r.reference && r.reference->lower && r.reference->upper) {
      pub = "(" + num(*r.reference->lower, 3) + ", " + num(*r.reference->upper, 3) + ")";
    }
    out << pad(r.name, 18) << pad(fixed(r.lambda2, 4), 10) << pad(r.bounds ? fixed(r.bounds->lower, 3) : "-", 9)
        << pad(r.bounds ? fixed(r.bounds->upper, 3) : "-", 9) << pad(pub, 14)
        << pad(r.settling_time ? fixed(*r.settling_time, 3) : "none", 10) << (r.pass ? "PASS" : "FAIL") << "\n";
  }

  // GAL vs double-power ordering within each scale setting.
  std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> by_setting;
  for (const auto& o : outcomes) {
    if (!o.report) continue;
    const auto& r = *o.report;
    const std::string setting = r.name.substr(0, r.name.rfind('_'));
    auto& slot = by_setting[setting];
    (r.protocol == "gal" ? slot.first : slot.second) = r.settling_time;
  }
  for (const auto& [setting, times] : by_setting) {
    const auto& [gal, dp] = times;
    if (!gal || !dp) continue;
    out << "ordering " << setting << ": gal " << fixed(*gal, 3) << (*gal < *dp ? " < " : " >= ") << "double_power "
        << fixed(*dp, 3) << "\n";
  }
  out << (all_pass ? "all runs PASS" : "one or more runs FAILED") << "\n";
  return all_pass ? kSuccess : kNumericalFailure;
}

std::vector<double> default_al_ode_states() {
  return {0.1, -0.1, 0.5, -0.5, 1.0, -1.0, 10.0, -10.0, 100.0, -100.0, 1e6, -1e6};
}

int cmd_al_ode(std::ostream& out, const ALParams& params, const std::vector<double>& x0s) {
  const auto fixed_bounds = fixed_time_bounds(params);
  out << "law: rho=" << num(params.rho()) << " kappa1=" << num(params.kappa1()) << " kappa2=" << num(params.kappa2())
      << " gamma1=" << params.gamma1_ratio().str() << " gamma2=" << params.gamma2_ratio().str() << "\n";
  out << "fixed-time bounds: lower " << fixed(fixed_bounds.lower, 4) << ", upper " << fixed(fixed_bounds.upper, 4)
      << "\n";
  out << pad("x0", 12) << pad("measured", 12) << pad("lower", 12) << pad("upper", 12) << pad("regime", 18) << "check\n";
  bool ok = true;
  for (double x0 : x0s) {
    const auto b = settling_bounds(params, x0);
    const auto res = integrate_settling_time(params, x0);
    const double slack = 2.0 * res.base_step;
    bool inside = false;
    if (res.settling_time) {
      const double t = *res.settling_time;
      inside = t >= b.lower - slack && t <= b.upper + slack && t <= fixed_bounds.upper + slack;
    }
    ok = ok && inside;
    out << pad(num(x0), 12) << pad(res.settling_time ? fixed(*res.settling_time, 6) : "none", 12)
        << pad(fixed(b.lower, 6), 12) << pad(fixed(b.upper, 6), 12) << pad(to_string(b.regime), 18)
        << (inside ? "ok" : "OUT OF INTERVAL") << "\n";
  }
  return ok ? kSuccess : kNumericalFailure;
}

}  // namespace scaledcons::tools
