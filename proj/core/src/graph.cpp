#include "scaledcons/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>

namespace scaledcons {

namespace {

void check_common(const Matrix& w) {
  if (w.size() < 2) throw GraphError("graph needs at least 2 agents");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w(i, i) != 0.0) {
      throw GraphError("self-loop at node " + std::to_string(i + 1) + " (a_ii must be 0)");
    }
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (!std::isfinite(w(i, j))) {
        throw GraphError("non-finite weight at (" + std::to_string(i + 1) + ", " +
                         std::to_string(j + 1) + ")");
      }
    }
  }
}

void check_nonnegative(const Matrix& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w(i, j) < 0.0) {
        throw GraphError("negative weight at (" + std::to_string(i + 1) + ", " +
                         std::to_string(j + 1) + ")");
      }
}

void check_symmetric(const Matrix& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w(i, j) != w(j, i)) {
        throw GraphError("undirected graph requires a_ij == a_ji; differs at (" +
                         std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
      }
}

std::vector<bool> reachable(const Matrix& w, bool reverse) {
  const std::size_t n = w.size();
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j) {
      const double a = reverse ? w(j, i) : w(i, j);
      if (a != 0.0 && !seen[j]) {
        seen[j] = true;
        queue.push_back(j);
      }
    }
  }
  return seen;
}

bool all_of(const std::vector<bool>& v) {
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

struct Fraction {
  long num;
  long den;
};

// Continued-fraction approximation with bounded denominator.
std::optional<Fraction> as_fraction(double r, long max_den) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = r;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(x);
    if (fl > 1e12) break;
    const long a = static_cast<long>(fl);
    const long h2 = a * h1 + h0;
    const long k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2;
    k0 = k1; k1 = k2;
    if (std::abs(r - static_cast<double>(h1) / static_cast<double>(k1)) <= 1e-9 * std::abs(r)) {
      return Fraction{h1, k1};
    }
    const double frac = x - fl;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

WeightedGraph::WeightedGraph(Matrix w, bool directed, EdgeSigns signs)
    : weights_(std::move(w)), directed_(directed), signs_(signs) {}

WeightedGraph WeightedGraph::undirected(Matrix weights) {
  check_common(weights);
  check_nonnegative(weights);
  check_symmetric(weights);
  return WeightedGraph(std::move(weights), false, EdgeSigns::NonNegative);
}

WeightedGraph WeightedGraph::directed(Matrix weights) {
  check_common(weights);
  check_nonnegative(weights);
  return WeightedGraph(std::move(weights), true, EdgeSigns::NonNegative);
}

WeightedGraph WeightedGraph::signed_undirected(Matrix weights) {
  check_common(weights);
  check_symmetric(weights);
  return WeightedGraph(std::move(weights), false, EdgeSigns::Signed);
}

Matrix laplacian(const Matrix& w) {
  const std::size_t n = w.size();
  Matrix lap(n);
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      lap(i, j) = -w(i, j);
      off += lap(i, j);
    }
    lap(i, i) = -off;
  }
  return lap;
}

Matrix laplacian(const WeightedGraph& g) { return laplacian(g.weights()); }

Matrix signed_laplacian(const Matrix& w) {
  const std::size_t n = w.size();
  Matrix lap(n);
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      lap(i, j) = -w(i, j);
      deg += std::abs(w(i, j));
    }
    lap(i, i) = deg;
  }
  return lap;
}

std::vector<double> symmetric_eigenvalues(const Matrix& input, JacobiOptions opts) {
  if (!input.is_symmetric(1e-12 * std::max(1.0, input.max_abs()))) {
    throw GraphError(
        "eigensolver requires a symmetric matrix; for a directed graph pass the mirror Laplacian");
  }
  Matrix a = input;
  const std::size_t n = a.size();

  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob += a(i, j) * a(i, j);
  const double tol = opts.off_diagonal_tol * std::max(1.0, std::sqrt(frob));

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) < tol) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

LaplacianAnalysis analyze_laplacian(const Matrix& lap) {
  LaplacianAnalysis out;
  out.laplacian = lap;
  out.eigenvalues = symmetric_eigenvalues(lap);
  out.lambda2 = out.eigenvalues.size() >= 2 ? out.eigenvalues[1] : 0.0;

  double max_diag = 0.0;
  for (std::size_t i = 0; i < lap.size(); ++i) max_diag = std::max(max_diag, lap(i, i));
  out.connected = out.lambda2 > 1e-8 * max_diag;
  return out;
}

double algebraic_connectivity(const Matrix& lap) {
  if (lap.size() < 2) throw GraphError("algebraic connectivity needs at least 2 nodes");
  return symmetric_eigenvalues(lap)[1];
}

bool is_connected(const Matrix& w, bool directed) {
  if (w.size() == 0) return false;
  if (!all_of(reachable(w, false))) return false;
  return !directed || all_of(reachable(w, true));
}

bool is_connected(const WeightedGraph& g) { return is_connected(g.weights(), g.is_directed()); }

double detail_balance_residual(const WeightedGraph& g, const std::vector<double>& p) {
  const Matrix& a = g.weights();
  const double scale = a.max_abs();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      worst = std::max(worst, std::abs(p[i] * a(i, j) - p[j] * a(j, i)));
  return scale > 0.0 ? worst / scale : worst;
}

namespace {

bool edges_balanced(const Matrix& a, const std::vector<double>& p) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double fwd = p[i] * a(i, j);
      const double bwd = p[j] * a(j, i);
      if ((a(i, j) > 0.0) != (a(j, i) > 0.0)) return false;
      if (std::abs(fwd - bwd) > kDetailBalanceRelTol * std::max(std::abs(fwd), std::abs(bwd))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

DetailBalance find_detail_balance(const WeightedGraph& g) {
  const Matrix& a = g.weights();
  const std::size_t n = a.size();
  DetailBalance out;
  out.params.assign(n, 0.0);
  out.params[0] = 1.0;

  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j] || (a(i, j) == 0.0 && a(j, i) == 0.0)) continue;
      if (a(i, j) <= 0.0 || a(j, i) <= 0.0) return out;  // one-way edge
      out.params[j] = out.params[i] * a(i, j) / a(j, i);
      seen[j] = true;
      queue.push_back(j);
    }
  }
  if (!all_of(seen)) return out;

  out.valid = edges_balanced(a, out.params);
  return out;
}

DetailBalance check_detail_balance(const WeightedGraph& g, std::vector<double> p) {
  DetailBalance out{std::move(p), false};
  if (out.params.size() != g.size()) return out;
  for (double v : out.params)
    if (!(v > 0.0) || !std::isfinite(v)) return out;
  out.valid = edges_balanced(g.weights(), out.params);
  return out;
}

std::vector<double> integer_normalized(const std::vector<double>& p, long max_denominator) {
  if (p.empty() || !(p[0] > 0.0)) return p;
  std::vector<Fraction> fr;
  fr.reserve(p.size());
  for (double v : p) {
    auto f = as_fraction(v / p[0], max_denominator);
    if (!f || f->num <= 0) return p;
    fr.push_back(*f);
  }
  long lcm = 1;
  for (const auto& f : fr) {
    lcm = std::lcm(lcm, f.den);
    if (lcm > 1'000'000'000L) return p;
  }
  std::vector<long> ints;
  long g = 0;
  for (const auto& f : fr) {
    ints.push_back(f.num * (lcm / f.den));
    g = std::gcd(g, ints.back());
  }
  std::vector<double> out;
  for (long v : ints) out.push_back(static_cast<double>(v / g));
  return out;
}

Matrix mirror_weights(const WeightedGraph& g, const DetailBalance& db) {
  if (!db.valid) throw GraphError("mirror graph requires a valid detail-balance vector");
  if (db.params.size() != g.size()) throw GraphError("detail-balance vector has wrong length");
  const Matrix& a = g.weights();
  Matrix hat(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) hat(i, j) = db.params[i] * a(i, j);
  // p_i a_ij and p_j a_ji agree to within round-off; force exact symmetry.
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double avg = 0.5 * (hat(i, j) + hat(j, i));
      hat(i, j) = hat(j, i) = avg;
    }
  return hat;
}

Matrix mirror_laplacian(const WeightedGraph& g, const DetailBalance& db) {
  return laplacian(mirror_weights(g, db));
}

}  // namespace scaledcons
