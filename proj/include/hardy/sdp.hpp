#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hardy::sdp {

/// Block of the LMI: a dense symmetric PSD block or a diagonal
/// (componentwise nonnegative) block.
struct BlockSpec {
  int size = 0;
  bool diagonal = false;
};

/// One matrix per block; diagonal blocks store their diagonal as a column.
using BlockMatrix = std::vector<Eigen::MatrixXd>;

/// maximize b'y  subject to  F0 + sum_k y_k F_k >= 0 (blockwise).
struct LmiProblem {
  std::vector<BlockSpec> blocks;
  BlockMatrix f0;
  std::vector<BlockMatrix> f;  // f[k] multiplies y_k
  Eigen::VectorXd b;

  std::size_t variables() const { return f.size(); }
  BlockMatrix zero_block_matrix() const;
  /// F0 + sum_k y_k F_k.
  BlockMatrix slack(const Eigen::VectorXd& y) const;
};

enum class Status { Optimal, MaxIterations, Infeasible, NumericalFailure };

std::string to_string(Status s);

struct Options {
  int max_iterations = 200;
  double gap_tol = 1e-7;
  double feasibility_tol = 1e-7;
  double step_fraction = 0.95;
};

struct Solution {
  Status status = Status::MaxIterations;
  double primal_objective = 0.0;  // b'y, the LMI side
  double dual_objective = 0.0;    // <F0, X>
  double duality_gap = 0.0;       // relative
  double infeasibility = 0.0;     // largest relative residual
  Eigen::VectorXd y;
  BlockMatrix x;  // dual certificate
  int iterations = 0;
};

/// Infeasible primal-dual path following with the HKM direction and a
/// Mehrotra predictor-corrector step. Starts from scaled identities; no
/// randomness, so repeated solves are bitwise identical.
Solution solve(const LmiProblem& problem, const Options& options = {});

/// Smallest eigenvalue over all blocks.
double min_eigenvalue(const std::vector<BlockSpec>& blocks, const BlockMatrix& m);

}  // namespace hardy::sdp
