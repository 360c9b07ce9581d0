#include "hardy/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hardy::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

// Dense tableau: `m` constraint rows followed by one reduced-cost row. Each
// row holds `width` coefficients and the right-hand side in the last slot.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t width) : m_(m), width_(width), data_((m + 1) * (width + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * (width_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * (width_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, width_); }
  double rhs(std::size_t i) const { return at(i, width_); }
  double* row(std::size_t i) { return &data_[i * (width_ + 1)]; }

  std::size_t m() const { return m_; }
  std::size_t width() const { return width_; }

  void pivot(std::size_t r, std::size_t q) {
    double* pr = row(r);
    const double inv = 1.0 / pr[q];
    for (std::size_t j = 0; j <= width_; ++j) pr[j] *= inv;
    pr[q] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* pi = row(i);
      const double f = pi[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= width_; ++j) pi[j] -= f * pr[j];
      pi[q] = 0.0;
    }
  }

  void drop_row(std::size_t r) {
    // Moves the last constraint row and the cost row up by one slot.
    const std::size_t stride = width_ + 1;
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * stride),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * stride));
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t width_;
  std::vector<double> data_;
};

struct Runner {
  Tableau& tab;
  std::vector<std::size_t>& basis;
  const Options& opt;
  std::size_t enterable;  // columns [0, enterable) may enter the basis
  std::size_t iterations = 0;

  // Reduced costs live in the last row; a column may enter when its value is
  // positive (maximization).
  Status run() {
    std::size_t streak = 0;
    bool bland = opt.rule == PivotRule::Bland;
    const std::size_t m = tab.m();
    double* cost = tab.row(m);
    while (true) {
      if (iterations >= opt.max_iterations) return Status::IterationLimit;
      std::size_t q = enterable;
      double best = opt.optimality_tol;
      for (std::size_t j = 0; j < enterable; ++j) {
        if (cost[j] > best) {
          q = j;
          if (bland) break;
          best = cost[j];
        }
      }
      if (q == enterable) return Status::Optimal;

      std::size_t r = m;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        const double aiq = tab.at(i, q);
        if (aiq <= opt.pivot_tol) continue;
        const double v = std::max(tab.rhs(i), 0.0) / aiq;
        if (v < ratio - 1e-15 || (v <= ratio + 1e-15 && r < m && basis[i] < basis[r])) {
          ratio = v;
          r = i;
        }
      }
      if (r == m) return Status::Unbounded;

      streak = ratio <= 1e-15 ? streak + 1 : 0;
      if (streak > opt.degenerate_streak) bland = true;

      tab.pivot(r, q);
      basis[r] = q;
      ++iterations;
    }
  }
};

}  // namespace

Solution solve(const Problem& p, const Options& opt) {
  const std::size_t m = p.rows;
  const std::size_t n = p.cols;
  Solution sol;
  sol.x.assign(n, 0.0);

  // Columns: n structural, then m artificial.
  Tableau tab(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = p.b[i] < 0.0 ? -1.0 : 1.0;
    double* row = tab.row(i);
    for (std::size_t j = 0; j < n; ++j) row[j] = sign * p.at(i, j);
    row[n + i] = 1.0;
    tab.rhs(i) = sign * p.b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Phase one: maximize -sum(artificials). With artificials basic, the
  // reduced cost of a structural column is the sum of its entries.
  {
    double* cost = tab.row(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double* row = tab.row(i);
      for (std::size_t j = 0; j < n; ++j) cost[j] += row[j];
      tab.rhs(m) += tab.rhs(i);
    }
    Runner phase1{tab, basis, opt, n};
    const Status s = phase1.run();
    sol.iterations += phase1.iterations;
    if (s == Status::IterationLimit) {
      sol.status = s;
      return sol;
    }
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < tab.m(); ++i)
      if (basis[i] >= n) infeasibility += std::abs(tab.rhs(i));
    if (infeasibility > opt.feasibility_tol) {
      sol.status = Status::Infeasible;
      return sol;
    }
  }

  // Drive remaining artificials out of the basis; rows where that is
  // impossible are linearly dependent and are dropped.
  for (std::size_t i = 0; i < tab.m();) {
    if (basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t q = n;
    double best = opt.pivot_tol;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.at(i, j)) > best) {
        best = std::abs(tab.at(i, j));
        q = j;
      }
    }
    if (q < n) {
      tab.pivot(i, q);
      basis[i] = q;
      ++i;
    } else {
      tab.drop_row(i);
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  // Phase two cost row: d_j = c_j - c_B' B^{-1} a_j.
  {
    const std::size_t mm = tab.m();
    double* cost = tab.row(mm);
    for (std::size_t j = 0; j <= n + m; ++j) cost[j] = 0.0;
    for (std::size_t j = 0; j < n; ++j) cost[j] = p.c[j];
    for (std::size_t i = 0; i < mm; ++i) {
      const double cb = p.c[basis[i]];
      if (cb == 0.0) continue;
      const double* row = tab.row(i);
      for (std::size_t j = 0; j < n; ++j) cost[j] -= cb * row[j];
      cost[n + m] -= cb * row[n + m];
    }
    Runner phase2{tab, basis, opt, n};
    sol.status = phase2.run();
    sol.iterations += phase2.iterations;
  }

  for (std::size_t i = 0; i < tab.m(); ++i) sol.x[basis[i]] = std::max(tab.rhs(i), 0.0);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += p.c[j] * sol.x[j];
  return sol;
}

}  // namespace hardy::lp
