#include "scaledcons/scenario_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace scaledcons {

using nlohmann::json;

namespace {

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

std::string index(const std::string& parent, std::size_t i) { return parent + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(path, key), "missing required field");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

std::vector<double> as_vector(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], index(path, i)));
  return out;
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, join(path, key));
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(join(path, it.key()), "unknown field");
  }
}

GraphBlock parse_graph(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  check_keys(j, {"directed", "weights", "detail_balance"}, path);
  GraphBlock g;
  if (auto it = j.find("directed"); it != j.end()) g.directed = as_bool(*it, join(path, "directed"));
  const std::string wpath = join(path, "weights");
  const json& w = require(j, "weights", path);
  if (!w.is_array() || w.empty()) throw ConfigError(wpath, "expected a non-empty array of rows");
  for (std::size_t i = 0; i < w.size(); ++i) {
    g.weights.push_back(as_vector(w[i], index(wpath, i)));
    if (g.weights.back().size() != w.size()) {
      throw ConfigError(index(wpath, i), "row has " + std::to_string(g.weights.back().size()) +
                                             " entries; matrix must be " + std::to_string(w.size()) + "x" +
                                             std::to_string(w.size()));
    }
  }
  if (auto it = j.find("detail_balance"); it != j.end()) {
    g.detail_balance = as_vector(*it, join(path, "detail_balance"));
  }
  return g;
}

ProtocolBlock parse_protocol(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  check_keys(j, {"kind", "rho", "kappa1", "kappa2", "q", "p", "m", "n"}, path);
  ProtocolBlock p;
  p.kind = as_string(require(j, "kind", path), join(path, "kind"));
  try {
    parse_protocol_kind(p.kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(join(path, "kind"), e.what());
  }
  p.rho = number_or(j, "rho", path, 0.0);
  p.kappa1 = as_number(require(j, "kappa1", path), join(path, "kappa1"));
  p.kappa2 = as_number(require(j, "kappa2", path), join(path, "kappa2"));
  p.q = as_int(require(j, "q", path), join(path, "q"));
  p.p = as_int(require(j, "p", path), join(path, "p"));
  p.m = as_int(require(j, "m", path), join(path, "m"));
  p.n = as_int(require(j, "n", path), join(path, "n"));
  return p;
}

std::vector<ScaleEntry> parse_scales(const json& j, const std::string& path, std::size_t agents) {
  std::vector<ScaleEntry> out;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "identity") {
      out.assign(agents, ScaleEntry{"", 0, "x"});
      return out;
    }
    if (!parse_scale_setting(name)) throw ConfigError(path, "unknown scale setting '" + name + "'");
    for (std::size_t i = 1; i <= agents; ++i) out.push_back({name, static_cast<int>(i), ""});
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string ipath = index(path, i);
      const json& e = j[i];
      if (e.is_string()) {
        out.push_back({"", 0, e.get<std::string>()});
        continue;
      }
      if (!e.is_object()) throw ConfigError(ipath, "expected an object or expression string");
      check_keys(e, {"builtin", "agent", "expr"}, ipath);
      ScaleEntry entry;
      if (auto it = e.find("expr"); it != e.end()) {
        entry.expr = as_string(*it, join(ipath, "expr"));
        if (e.contains("builtin")) throw ConfigError(ipath, "give either 'builtin' or 'expr', not both");
      } else {
        entry.builtin = as_string(require(e, "builtin", ipath), join(ipath, "builtin"));
        entry.agent = as_int(require(e, "agent", ipath), join(ipath, "agent"));
      }
      out.push_back(std::move(entry));
    }
  } else {
    throw ConfigError(path, "expected a setting name or an array of scale entries");
  }
  if (out.size() != agents) {
    throw ConfigError(path, std::to_string(out.size()) + " scales for " + std::to_string(agents) + " agents");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    try {
      make_scale(out[i]);
    } catch (const std::exception& e) {
      throw ConfigError(index(path, i), e.what());
    }
  }
  return out;
}

RunBlock parse_run(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  check_keys(j, {"x0", "horizon", "step", "epsilon", "record_stride", "output"}, path);
  RunBlock r;
  r.x0 = as_vector(require(j, "x0", path), join(path, "x0"));
  auto& s = r.settings;
  s.horizon = number_or(j, "horizon", path, s.horizon);
  s.step = number_or(j, "step", path, s.step);
  s.epsilon = number_or(j, "epsilon", path, s.epsilon);
  s.record_stride = number_or(j, "record_stride", path, s.record_stride);
  if (!(s.step > 0.0)) throw ConfigError(join(path, "step"), "must be > 0");
  if (!(s.horizon >= s.step)) throw ConfigError(join(path, "horizon"), "must be >= step");
  if (!(s.epsilon > 0.0)) throw ConfigError(join(path, "epsilon"), "must be > 0");
  if (!(s.record_stride > 0.0)) throw ConfigError(join(path, "record_stride"), "must be > 0");
  if (auto it = j.find("output"); it != j.end()) r.output = as_string(*it, join(path, "output"));
  return r;
}

ReferenceBlock parse_reference(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  check_keys(j, {"lambda2", "lower", "upper", "tolerance"}, path);
  ReferenceBlock r;
  if (auto it = j.find("lambda2"); it != j.end()) r.lambda2 = as_number(*it, join(path, "lambda2"));
  if (auto it = j.find("lower"); it != j.end()) r.lower = as_number(*it, join(path, "lower"));
  if (auto it = j.find("upper"); it != j.end()) r.upper = as_number(*it, join(path, "upper"));
  r.tolerance = number_or(j, "tolerance", path, r.tolerance);
  return r;
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ScenarioConfig parse_scenario_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ConfigError(location(text, e.byte == 0 ? 0 : e.byte - 1), msg);
  }
  if (!root.is_object()) throw ConfigError("<root>", "expected an object");
  check_keys(root, {"name", "graph", "protocol", "scales", "run", "reference"}, "");

  ScenarioConfig cfg;
  if (auto it = root.find("name"); it != root.end()) cfg.name = as_string(*it, "name");
  cfg.graph = parse_graph(require(root, "graph", ""), "graph");
  cfg.protocol = parse_protocol(require(root, "protocol", ""), "protocol");
  cfg.scales = parse_scales(require(root, "scales", ""), "scales", cfg.graph.weights.size());
  cfg.run = parse_run(require(root, "run", ""), "run");
  if (cfg.run.x0.size() != cfg.graph.weights.size()) {
    throw ConfigError("run.x0", std::to_string(cfg.run.x0.size()) + " initial states for " +
                                    std::to_string(cfg.graph.weights.size()) + " agents");
  }
  if (auto it = root.find("reference"); it != root.end()) cfg.reference = parse_reference(*it, "reference");
  return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_config(buf.str());
}

std::string dump_scenario_config(const ScenarioConfig& cfg) {
  json root;
  if (!cfg.name.empty()) root["name"] = cfg.name;
  root["graph"]["directed"] = cfg.graph.directed;
  root["graph"]["weights"] = cfg.graph.weights;
  if (cfg.graph.detail_balance) root["graph"]["detail_balance"] = *cfg.graph.detail_balance;

  const auto& p = cfg.protocol;
  root["protocol"] = {{"kind", p.kind}, {"rho", p.rho}, {"kappa1", p.kappa1}, {"kappa2", p.kappa2},
                      {"q", p.q},       {"p", p.p},     {"m", p.m},           {"n", p.n}};

  json scales = json::array();
  for (const auto& s : cfg.scales) {
    if (s.expr.empty()) scales.push_back({{"builtin", s.builtin}, {"agent", s.agent}});
    else scales.push_back({{"expr", s.expr}});
  }
  root["scales"] = scales;

  const auto& st = cfg.run.settings;
  root["run"] = {{"x0", cfg.run.x0},
                 {"horizon", st.horizon},
                 {"step", st.step},
                 {"epsilon", st.epsilon},
                 {"record_stride", st.record_stride}};
  if (!cfg.run.output.empty()) root["run"]["output"] = cfg.run.output;

  if (cfg.reference) {
    json ref;
    if (cfg.reference->lambda2) ref["lambda2"] = *cfg.reference->lambda2;
    if (cfg.reference->lower) ref["lower"] = *cfg.reference->lower;
    if (cfg.reference->upper) ref["upper"] = *cfg.reference->upper;
    ref["tolerance"] = cfg.reference->tolerance;
    root["reference"] = ref;
  }
  return root.dump(2) + "\n";
}

ScaleFunction make_scale(const ScaleEntry& entry) {
  if (!entry.expr.empty()) return parse_scale(entry.expr);
  const auto setting = parse_scale_setting(entry.builtin);
  if (!setting) throw std::invalid_argument("unknown built-in scale '" + entry.builtin + "'");
  return builtin_scale(*setting, entry.agent);
}

PreparedScenario prepare_scenario(const ScenarioConfig& cfg) {
  const auto kind = parse_protocol_kind(cfg.protocol.kind);
  const auto& pb = cfg.protocol;
  ALParams params = [&] {
    try {
      return ALParams(kind == ProtocolKind::DoublePower ? 0.0 : pb.rho, pb.kappa1, pb.kappa2, {pb.q, pb.p},
                      {pb.m, pb.n});
    } catch (const ParamError& e) {
      throw ConfigError("protocol", e.what());
    }
  }();

  Matrix w = [&] {
    try {
      return Matrix::from_rows(cfg.graph.weights);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("graph.weights", e.what());
    }
  }();

  auto build_graph = [&]() {
    try {
      if (kind == ProtocolKind::SignedGal) {
        if (cfg.graph.directed) throw GraphError("signed_gal supports undirected graphs only");
        return WeightedGraph::signed_undirected(w);
      }
      return cfg.graph.directed ? WeightedGraph::directed(w) : WeightedGraph::undirected(w);
    } catch (const GraphError& e) {
      throw ConfigError("graph.weights", e.what());
    }
  };
  WeightedGraph graph = build_graph();

  if (!is_connected(graph)) {
    throw GraphError(graph.is_directed() ? "graph is not strongly connected" : "graph is not connected");
  }

  std::optional<DetailBalance> balance;
  Matrix coupling = graph.weights();
  if (graph.is_directed()) {
    DetailBalance db;
    if (cfg.graph.detail_balance) {
      db = check_detail_balance(graph, *cfg.graph.detail_balance);
      if (!db.valid) {
        throw ConfigError("graph.detail_balance", "vector does not satisfy p_i a_ij = p_j a_ji on every edge");
      }
    } else {
      db = find_detail_balance(graph);
      if (!db.valid) throw GraphError("directed graph is not detail-balanced (no p with p_i a_ij = p_j a_ji)");
      db.params = integer_normalized(db.params);
    }
    coupling = mirror_weights(graph, db);
    balance = db;
  }

  Matrix magnitude = coupling;
  for (std::size_t i = 0; i < magnitude.size(); ++i)
    for (std::size_t j = 0; j < magnitude.size(); ++j) magnitude(i, j) = std::abs(magnitude(i, j));
  LaplacianAnalysis analysis = analyze_laplacian(laplacian(magnitude));

  std::vector<ScaleFunction> scales;
  for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
    try {
      scales.push_back(make_scale(cfg.scales[i]));
    } catch (const std::exception& e) {
      throw ConfigError("scales[" + std::to_string(i) + "]", e.what());
    }
  }

  Scenario scenario{cfg.name, ProtocolSpec(kind, params, coupling), std::move(scales), cfg.run.x0,
                    cfg.run.settings};
  try {
    scenario.validate();
  } catch (const GraphError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("run", e.what());
  }

  std::optional<ALParams> transformed;
  std::optional<SettlingBounds> bounds;
  if (kind != ProtocolKind::SignedGal) {
    transformed = transformed_params(scenario.protocol.params(), analysis.lambda2, static_cast<int>(graph.size()));
    bounds = fixed_time_bounds(*transformed);
  }
  return PreparedScenario{std::move(scenario), std::move(graph),   std::move(balance), std::move(analysis),
                          params,              std::move(transformed), bounds};
}

}  // namespace scaledcons
