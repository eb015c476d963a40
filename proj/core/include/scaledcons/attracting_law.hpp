#pragma once

#include <stdexcept>
#include <string>

namespace scaledcons {

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponent num/den stored exactly so oddness and ordering checks are exact.
struct OddRatio {
  int num = 1;
  int den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  /// Parses "q/p" or a bare integer.
  static OddRatio parse(const std::string& text);

  friend bool operator==(const OddRatio&, const OddRatio&) = default;
};

/// Parameters of the attracting law
///   x' = -rho x - kappa1 |x|^g1 sgn(x) - kappa2 |x|^g2 sgn(x)
/// with g1 = q/p in (0, 1) and g2 = m/n > 1, all of q, p, m, n odd.
/// rho == 0 gives the two-term (double-power) law.
class ALParams {
 public:
  ALParams(double rho, double kappa1, double kappa2, OddRatio gamma1, OddRatio gamma2);

  double rho() const { return rho_; }
  double kappa1() const { return kappa1_; }
  double kappa2() const { return kappa2_; }
  OddRatio gamma1_ratio() const { return gamma1_; }
  OddRatio gamma2_ratio() const { return gamma2_; }
  double gamma1() const { return gamma1_.value(); }
  double gamma2() const { return gamma2_.value(); }

  bool is_double_power() const { return rho_ == 0.0; }
  ALParams with_rho(double rho) const;

  friend bool operator==(const ALParams&, const ALParams&) = default;

 private:
  double rho_;
  double kappa1_;
  double kappa2_;
  OddRatio gamma1_;
  OddRatio gamma2_;
};

/// sgn(x) |x|^gamma, with 0 at the origin. For odd ratios this is x^gamma.
double signed_pow(double x, double gamma);

double al_rhs(const ALParams& params, double x);

enum class BoundRegime { AtOrigin, SmallState, LargeState, StateIndependent };

const char* to_string(BoundRegime r);

struct SettlingBounds {
  double lower = 0.0;
  double upper = 0.0;
  BoundRegime regime = BoundRegime::StateIndependent;
};

/// Closed-form settling-time interval for the scalar law started at x0.
/// Uses the three-term formulas when rho > 0 and the two-term ones when
/// rho == 0, branching on |x0| >= 1.
SettlingBounds settling_bounds(const ALParams& params, double x0);

/// Interval valid for every |x0| >= 1; the upper end also bounds |x0| < 1.
SettlingBounds fixed_time_bounds(const ALParams& params);

/// Rates of the scalar law obeyed by sqrt(V) on a network with algebraic
/// connectivity lambda2 and n_agents agents:
///   rho'    = rho lambda2
///   kappa1' = kappa1 2^((q-p)/2p) lambda2^((q+p)/2p)
///   kappa2' = kappa2 2^((m-n)/2n) N^((n-m)/2n) lambda2^((m+n)/2n)
ALParams transformed_params(const ALParams& params, double lambda2, int n_agents);

/// True iff both fixed-time bounds of params are strictly below those of the
/// same law with rho = 0. Requires rho > 0.
bool gal_beats_double_power(const ALParams& params);

}  // namespace scaledcons
