#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hardy::lp {

/// maximize c'x  subject to  A x = b,  x >= 0.  A is dense, row-major.
struct Problem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // rows * cols
  std::vector<double> b;
  std::vector<double> c;

  Problem() = default;
  Problem(std::size_t m, std::size_t n) : rows(m), cols(n), a(m * n, 0.0), b(m, 0.0), c(n, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(Status s);

enum class PivotRule {
  Bland,                     // smallest eligible index, always
  DantzigWithBlandFallback,  // steepest reduced cost; Bland after a degenerate streak
};

struct Options {
  PivotRule rule = PivotRule::DantzigWithBlandFallback;
  double pivot_tol = 1e-11;        // smallest admissible pivot magnitude
  double optimality_tol = 1e-11;   // reduced-cost threshold
  double feasibility_tol = 1e-9;   // phase-one residual accepted as feasible
  std::size_t max_iterations = 100000;
  std::size_t degenerate_streak = 30;  // switch to Bland after this many
};

struct Solution {
  Status status = Status::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

/// Two-phase tableau simplex. Single-use and single-threaded; independent
/// problems may be solved concurrently.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace hardy::lp
