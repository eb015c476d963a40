#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "scaledcons/matrix.hpp"

namespace scaledcons {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class EdgeSigns { NonNegative, Signed };

/// Interaction topology of an N-agent network. Entry (i, j) is the weight
/// with which agent i listens to agent j. Self-loops are rejected.
class WeightedGraph {
 public:
  /// Symmetric, nonnegative weights.
  static WeightedGraph undirected(Matrix weights);
  /// Nonnegative weights, any pattern.
  static WeightedGraph directed(Matrix weights);
  /// Symmetric weights whose sign encodes cooperation (+) or antagonism (-).
  static WeightedGraph signed_undirected(Matrix weights);

  std::size_t size() const { return weights_.size(); }
  const Matrix& weights() const { return weights_; }
  bool is_directed() const { return directed_; }
  bool is_signed() const { return signs_ == EdgeSigns::Signed; }

 private:
  WeightedGraph(Matrix w, bool directed, EdgeSigns signs);

  Matrix weights_;
  bool directed_ = false;
  EdgeSigns signs_ = EdgeSigns::NonNegative;
};

/// l_ii = sum_{k != i} a_ik, l_ij = -a_ij. The diagonal is the negated sum of
/// the off-diagonal row so that L * 1 == 0 holds exactly.
Matrix laplacian(const Matrix& weights);
Matrix laplacian(const WeightedGraph& g);

/// Laplacian of the sign-magnitude graph: l_ii = sum |a_ik|, l_ij = -a_ij.
Matrix signed_laplacian(const Matrix& weights);

struct JacobiOptions {
  double off_diagonal_tol = 1e-12;
  int max_sweeps = 100;
};

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotation.
/// Throws GraphError if the input is not symmetric.
std::vector<double> symmetric_eigenvalues(const Matrix& a, JacobiOptions opts = {});

struct LaplacianAnalysis {
  Matrix laplacian;
  std::vector<double> eigenvalues;
  double lambda2 = 0.0;
  bool connected = false;
};

/// Eigen-decomposes a symmetric Laplacian. An eigenvalue below
/// 1e-8 * (largest diagonal entry) counts as zero.
LaplacianAnalysis analyze_laplacian(const Matrix& lap);

/// Second-smallest Laplacian eigenvalue. A non-symmetric Laplacian is rejected;
/// directed graphs must go through mirror_laplacian first.
double algebraic_connectivity(const Matrix& lap);

/// Undirected: every node reachable from node 0. Directed: strongly connected.
/// Edges are the nonzero entries; signs are ignored.
bool is_connected(const WeightedGraph& g);
bool is_connected(const Matrix& weights, bool directed);

/// Positive vector p with p_i a_ij = p_j a_ji, normalized to p_0 = 1.
struct DetailBalance {
  std::vector<double> params;
  bool valid = false;
};

inline constexpr double kDetailBalanceRelTol = 1e-9;

/// Propagates p along a BFS spanning tree of the symmetrized edge set and then
/// checks every edge. Any one-way edge (a_ij > 0, a_ji == 0) makes the result
/// invalid. Never throws for well-formed graphs.
DetailBalance find_detail_balance(const WeightedGraph& g);

/// max_{i,j} |p_i a_ij - p_j a_ji| / max_{i,j} a_ij.
double detail_balance_residual(const WeightedGraph& g, const std::vector<double>& p);

/// Checks a user-supplied balance vector (positive entries, residual within
/// tolerance).
DetailBalance check_detail_balance(const WeightedGraph& g, std::vector<double> p);

/// Rescales p to the smallest positive integer vector with the same ratios
/// (entries coprime), when each ratio p_i / p_0 is a fraction with denominator
/// at most max_denominator. Returns p unchanged otherwise.
std::vector<double> integer_normalized(const std::vector<double>& p, long max_denominator = 1000);

/// a_hat_ij = p_i a_ij. Symmetric for a valid balance vector.
Matrix mirror_weights(const WeightedGraph& g, const DetailBalance& db);
Matrix mirror_laplacian(const WeightedGraph& g, const DetailBalance& db);

}  // namespace scaledcons
