#include "scaledcons/protocol.hpp"

#include <cmath>

#include "scaledcons/graph.hpp"

namespace scaledcons {

const char* to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::Gal: return "gal";
    case ProtocolKind::DoublePower: return "double_power";
    case ProtocolKind::SignedGal: return "signed_gal";
  }
  return "?";
}

ProtocolKind parse_protocol_kind(const std::string& name) {
  if (name == "gal") return ProtocolKind::Gal;
  if (name == "double_power" || name == "dp") return ProtocolKind::DoublePower;
  if (name == "signed_gal") return ProtocolKind::SignedGal;
  throw std::invalid_argument("unknown protocol kind '" + name + "' (expected gal, double_power, signed_gal)");
}

namespace {

ALParams normalized(ProtocolKind kind, const ALParams& p) {
  return kind == ProtocolKind::DoublePower ? p.with_rho(0.0) : p;
}

}  // namespace

ProtocolSpec::ProtocolSpec(ProtocolKind kind, ALParams params, Matrix weights)
    : kind_(kind), params_(normalized(kind, params)), weights_(std::move(weights)) {
  if (weights_.size() < 2) throw GraphError("protocol needs at least 2 agents");
  if (!weights_.is_symmetric()) {
    throw GraphError("protocol weights must be symmetric; install mirror weights for a directed graph");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_(i, i) != 0.0) throw GraphError("protocol weights must have a zero diagonal");
    if (kind_ == ProtocolKind::SignedGal) continue;
    for (std::size_t j = 0; j < weights_.size(); ++j)
      if (weights_(i, j) < 0.0) throw GraphError("negative weights are only allowed with signed_gal");
  }
}

DerivativeGuardError::DerivativeGuardError(std::size_t agent, double time, double state, double derivative)
    : std::runtime_error("derivative guard: |dg/dx| = " + std::to_string(std::abs(derivative)) +
                         " < 1e-8 for agent " + std::to_string(agent + 1) + " at t = " + std::to_string(time) +
                         ", x = " + std::to_string(state)),
      agent_(agent),
      time_(time),
      state_(state) {}

void scaled_states(std::span<const ScaleFunction> scales, std::span<const double> x, double t,
                   std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = scales[i].eval(x[i], t);
}

std::vector<double> scaled_states(std::span<const ScaleFunction> scales, std::span<const double> x, double t) {
  std::vector<double> g(x.size());
  scaled_states(scales, x, t, g);
  return g;
}

void coupling_errors(const ProtocolSpec& spec, std::span<const double> g, std::span<double> e) {
  const Matrix& a = spec.weights();
  const std::size_t n = a.size();
  const bool signed_law = spec.kind() == ProtocolKind::SignedGal;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double aij = a(i, j);
      if (signed_law) {
        const double sign = aij < 0.0 ? -1.0 : 1.0;
        sum += aij * (g[j] - sign * g[i]);
      } else {
        sum += aij * (g[j] - g[i]);
      }
    }
    e[i] = sum;
  }
}

std::vector<double> coupling_errors(const ProtocolSpec& spec, std::span<const double> g) {
  std::vector<double> e(g.size());
  coupling_errors(spec, g, e);
  return e;
}

void control(const ProtocolSpec& spec, std::span<const ScaleFunction> scales, std::span<const double> x,
             double t, std::span<double> u) {
  const std::size_t n = spec.size();
  const ALParams& p = spec.params();
  const double g1 = p.gamma1();
  const double g2 = p.gamma2();

  // u doubles as scratch for g before it is overwritten by the control.
  scaled_states(scales, x, t, u);
  std::vector<double> e(n);
  coupling_errors(spec, u, e);

  for (std::size_t i = 0; i < n; ++i) {
    const double dgdx = scales[i].d_dx(x[i], t);
    if (!(std::abs(dgdx) >= kDerivativeGuard)) throw DerivativeGuardError(i, t, x[i], dgdx);
    double drive = p.kappa1() * signed_pow(e[i], g1) + p.kappa2() * signed_pow(e[i], g2);
    if (p.rho() != 0.0) drive += p.rho() * e[i];
    u[i] = (drive - scales[i].d_dt(x[i], t)) / dgdx;
  }
}

std::vector<double> control(const ProtocolSpec& spec, std::span<const ScaleFunction> scales,
                            std::span<const double> x, double t) {
  std::vector<double> u(x.size());
  control(spec, scales, x, t, u);
  return u;
}

double disagreement(const ProtocolSpec& spec, std::span<const double> g) {
  const Matrix& a = spec.weights();
  const bool signed_law = spec.kind() == ProtocolKind::SignedGal;
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      const double d = signed_law && aij < 0.0 ? g[j] + g[i] : g[j] - g[i];
      v += std::abs(aij) * d * d;
    }
  }
  return 0.25 * v;
}

double disagreement(const ProtocolSpec& spec, std::span<const ScaleFunction> scales, std::span<const double> x,
                    double t) {
  return disagreement(spec, scaled_states(scales, x, t));
}

}  // namespace scaledcons
