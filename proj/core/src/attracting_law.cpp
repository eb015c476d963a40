#include "scaledcons/attracting_law.hpp"

#include <cmath>
#include <cstdlib>

namespace scaledcons {

namespace {

bool is_odd(int v) { return v % 2 != 0; }

int parse_int(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ParamError("invalid exponent '" + whole + "': expected q/p with integers");
  }
  if (used != s.size()) throw ParamError("invalid exponent '" + whole + "': expected q/p with integers");
  return v;
}

}  // namespace

OddRatio OddRatio::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return {parse_int(text, text), 1};
  return {parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text)};
}

ALParams::ALParams(double rho, double kappa1, double kappa2, OddRatio gamma1, OddRatio gamma2)
    : rho_(rho), kappa1_(kappa1), kappa2_(kappa2), gamma1_(gamma1), gamma2_(gamma2) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw ParamError("rho must be a finite real >= 0");
  if (!(kappa1 > 0.0) || !std::isfinite(kappa1)) throw ParamError("kappa1 must be a finite real > 0");
  if (!(kappa2 > 0.0) || !std::isfinite(kappa2)) throw ParamError("kappa2 must be a finite real > 0");
  for (int v : {gamma1.num, gamma1.den, gamma2.num, gamma2.den}) {
    if (v <= 0 || !is_odd(v)) {
      throw ParamError("q, p, m, n are odd numbers (positive); got gamma1 = " + gamma1.str() +
                       ", gamma2 = " + gamma2.str());
    }
  }
  if (!(gamma1.num < gamma1.den)) throw ParamError("gamma1 = q/p needs q < p; got " + gamma1.str());
  if (!(gamma2.den < gamma2.num)) throw ParamError("gamma2 = m/n needs n < m; got " + gamma2.str());
}

ALParams ALParams::with_rho(double rho) const {
  return ALParams(rho, kappa1_, kappa2_, gamma1_, gamma2_);
}

double signed_pow(double x, double gamma) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::exp(gamma * std::log(std::abs(x))), x);
}

double al_rhs(const ALParams& params, double x) {
  return -params.rho() * x - params.kappa1() * signed_pow(x, params.gamma1()) -
         params.kappa2() * signed_pow(x, params.gamma2());
}

const char* to_string(BoundRegime r) {
  switch (r) {
    case BoundRegime::AtOrigin: return "origin";
    case BoundRegime::SmallState: return "|x0|<1";
    case BoundRegime::LargeState: return "|x0|>=1";
    case BoundRegime::StateIndependent: return "state-independent";
  }
  return "?";
}

SettlingBounds settling_bounds(const ALParams& params, double x0) {
  const double ax = std::abs(x0);
  if (ax == 0.0) return {0.0, 0.0, BoundRegime::AtOrigin};

  const double rho = params.rho();
  const double k1 = params.kappa1();
  const double k2 = params.kappa2();
  const double g1 = params.gamma1();
  const double g2 = params.gamma2();
  const double a1 = std::pow(ax, 1.0 - g1);

  if (ax < 1.0) {
    if (rho > 0.0) {
      return {std::log1p((rho + k2) * a1 / k1) / ((rho + k2) * (1.0 - g1)),
              std::log1p(rho / k1 * a1) / (rho * (1.0 - g1)), BoundRegime::SmallState};
    }
    return {std::log1p(k2 * a1 / k1) / (k2 * (1.0 - g1)), a1 / (k1 * (1.0 - g1)),
            BoundRegime::SmallState};
  }

  const double a2 = std::pow(ax, 1.0 - g2);
  if (rho > 0.0) {
    const double r1 = k2 / (rho + k1);
    const double lower = std::log((1.0 + r1) / (a2 + r1)) / ((rho + k1) * (g2 - 1.0)) +
                         std::log1p((rho + k2) / k1) / ((rho + k2) * (1.0 - g1));
    const double r2 = k2 / rho;
    const double upper = std::log1p(rho / k1) / (rho * (1.0 - g1)) +
                         std::log((1.0 + r2) / (a2 + r2)) / (rho * (g2 - 1.0));
    return {lower, upper, BoundRegime::LargeState};
  }
  const double r = k2 / k1;
  const double lower = std::log((1.0 + r) / (a2 + r)) / (k1 * (g2 - 1.0)) +
                       std::log1p(r) / (k2 * (1.0 - g1));
  const double upper = 1.0 / (k1 * (1.0 - g1)) + (1.0 - a2) / (k2 * (g2 - 1.0));
  return {lower, upper, BoundRegime::LargeState};
}

SettlingBounds fixed_time_bounds(const ALParams& params) {
  const double rho = params.rho();
  const double k1 = params.kappa1();
  const double k2 = params.kappa2();
  const double g1 = params.gamma1();
  const double g2 = params.gamma2();
  if (rho > 0.0) {
    return {std::log1p((rho + k2) / k1) / ((rho + k2) * (1.0 - g1)),
            std::log1p(rho / k2) / (rho * (g2 - 1.0)) + std::log1p(rho / k1) / (rho * (1.0 - g1)),
            BoundRegime::StateIndependent};
  }
  return {std::log1p(k2 / k1) / (k2 * (1.0 - g1)), 1.0 / (k1 * (1.0 - g1)) + 1.0 / (k2 * (g2 - 1.0)),
          BoundRegime::StateIndependent};
}

ALParams transformed_params(const ALParams& params, double lambda2, int n_agents) {
  if (!(lambda2 > 0.0)) throw ParamError("lambda2 must be > 0 (graph not connected)");
  if (n_agents < 2) throw ParamError("need at least 2 agents");
  const double q = params.gamma1_ratio().num;
  const double p = params.gamma1_ratio().den;
  const double m = params.gamma2_ratio().num;
  const double n = params.gamma2_ratio().den;
  const double big_n = n_agents;

  const double rho = params.rho() * lambda2;
  const double k1 = params.kappa1() * std::pow(2.0, (q - p) / (2.0 * p)) * std::pow(lambda2, (q + p) / (2.0 * p));
  const double k2 = params.kappa2() * std::pow(2.0, (m - n) / (2.0 * n)) * std::pow(big_n, (n - m) / (2.0 * n)) *
                    std::pow(lambda2, (m + n) / (2.0 * n));
  return ALParams(rho, k1, k2, params.gamma1_ratio(), params.gamma2_ratio());
}

bool gal_beats_double_power(const ALParams& params) {
  if (!(params.rho() > 0.0)) throw ParamError("comparison needs rho > 0");
  const auto gal = fixed_time_bounds(params);
  const auto dp = fixed_time_bounds(params.with_rho(0.0));
  return gal.lower < dp.lower && gal.upper < dp.upper;
}

}  // namespace scaledcons
