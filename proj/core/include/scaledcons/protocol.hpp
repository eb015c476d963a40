#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scaledcons/attracting_law.hpp"
#include "scaledcons/matrix.hpp"
#include "scaledcons/scales.hpp"

namespace scaledcons {

enum class ProtocolKind { Gal, DoublePower, SignedGal };

const char* to_string(ProtocolKind k);
ProtocolKind parse_protocol_kind(const std::string& name);

/// A distributed scaled-consensus control law together with the coupling
/// weights it runs on. For a detail-balanced digraph the weights are the
/// mirror weights p_i a_ij, so the law itself never branches on direction.
class ProtocolSpec {
 public:
  /// Gal and DoublePower require symmetric nonnegative weights; SignedGal
  /// accepts symmetric weights of either sign. DoublePower forces rho = 0.
  ProtocolSpec(ProtocolKind kind, ALParams params, Matrix weights);

  ProtocolKind kind() const { return kind_; }
  const ALParams& params() const { return params_; }
  const Matrix& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

 private:
  ProtocolKind kind_;
  ALParams params_;
  Matrix weights_;
};

inline constexpr double kDerivativeGuard = 1e-8;

class DerivativeGuardError : public std::runtime_error {
 public:
  DerivativeGuardError(std::size_t agent, double time, double state, double derivative);
  std::size_t agent() const { return agent_; }
  double time() const { return time_; }
  double state() const { return state_; }

 private:
  std::size_t agent_;
  double time_;
  double state_;
};

/// g_i(x_i, t) for every agent.
void scaled_states(std::span<const ScaleFunction> scales, std::span<const double> x, double t,
                   std::span<double> out);
std::vector<double> scaled_states(std::span<const ScaleFunction> scales, std::span<const double> x,
                                  double t);

/// Weighted neighbourhood disagreement of each agent,
///   e_i = sum_j a_ij (g_j - g_i)            (Gal, DoublePower)
///   e_i = sum_j a_ij (g_j - sgn(a_ij) g_i)   (SignedGal)
void coupling_errors(const ProtocolSpec& spec, std::span<const double> g, std::span<double> e);
std::vector<double> coupling_errors(const ProtocolSpec& spec, std::span<const double> g);

/// Control input of every agent:
///   u_i = (kappa1 e_i^g1 + kappa2 e_i^g2 + rho e_i - dg_i/dt) / (dg_i/dx_i)
/// with signed odd-ratio powers. Throws DerivativeGuardError when
/// |dg_i/dx_i| < kDerivativeGuard.
void control(const ProtocolSpec& spec, std::span<const ScaleFunction> scales, std::span<const double> x,
             double t, std::span<double> u);
std::vector<double> control(const ProtocolSpec& spec, std::span<const ScaleFunction> scales,
                            std::span<const double> x, double t);

/// Lyapunov candidate 1/4 sum_ij a_ij (g_j - g_i)^2 on the scaled states g.
/// SignedGal uses |a_ij| (g_j - sgn(a_ij) g_i)^2.
double disagreement(const ProtocolSpec& spec, std::span<const double> g);
double disagreement(const ProtocolSpec& spec, std::span<const ScaleFunction> scales,
                    std::span<const double> x, double t);

}  // namespace scaledcons
