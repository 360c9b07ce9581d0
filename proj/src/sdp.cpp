#include "hardy/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hardy::sdp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::MaxIterations: return "max-iterations";
    case Status::Infeasible: return "infeasible";
    case Status::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

BlockMatrix LmiProblem::zero_block_matrix() const {
  BlockMatrix m;
  for (const auto& b : blocks)
    m.push_back(b.diagonal ? Eigen::MatrixXd::Zero(b.size, 1) : Eigen::MatrixXd::Zero(b.size, b.size));
  return m;
}

BlockMatrix LmiProblem::slack(const Eigen::VectorXd& y) const {
  BlockMatrix s = f0;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (y(static_cast<Eigen::Index>(k)) != 0.0)
      for (std::size_t j = 0; j < s.size(); ++j) s[j] += y(static_cast<Eigen::Index>(k)) * f[k][j];
  return s;
}

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

double inner(const std::vector<BlockSpec>&, const BlockMatrix& a, const BlockMatrix& b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += a[j].cwiseProduct(b[j]).sum();
  return sum;
}

double frob(const BlockMatrix& a) {
  double sum = 0.0;
  for (const auto& m : a) sum += m.squaredNorm();
  return std::sqrt(sum);
}

void axpy(BlockMatrix& y, double alpha, const BlockMatrix& x) {
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += alpha * x[j];
}

Mat sym(const Mat& m) { return 0.5 * (m + m.transpose()); }

// Largest step alpha with m + alpha d >= 0 (infinity when unbounded).
double max_step(const std::vector<BlockSpec>& blocks, const BlockMatrix& m, const BlockMatrix& d) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j].diagonal) {
      for (Eigen::Index i = 0; i < m[j].rows(); ++i)
        if (d[j](i, 0) < 0.0) alpha = std::min(alpha, -m[j](i, 0) / d[j](i, 0));
      continue;
    }
    Eigen::LLT<Mat> llt(m[j]);
    if (llt.info() != Eigen::Success) return 0.0;
    const Mat linv = llt.matrixL().solve(Mat::Identity(m[j].rows(), m[j].cols()));
    const Mat q = sym(linv * d[j] * linv.transpose());
    const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(q, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

}  // namespace

double min_eigenvalue(const std::vector<BlockSpec>& blocks, const BlockMatrix& m) {
  double lmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (m[j].size() == 0) continue;
    if (blocks[j].diagonal) {
      lmin = std::min(lmin, m[j].minCoeff());
    } else {
      lmin = std::min(lmin,
                      Eigen::SelfAdjointEigenSolver<Mat>(sym(m[j]), Eigen::EigenvaluesOnly).eigenvalues().minCoeff());
    }
  }
  return lmin;
}

Solution solve(const LmiProblem& p, const Options& opt) {
  const auto& blocks = p.blocks;
  const std::size_t m = p.variables();
  const auto mi = static_cast<Eigen::Index>(m);
  int n_total = 0;
  for (const auto& b : blocks) n_total += b.size;

  // Standard form: C = F0, A_k = -F_k, primal min <C,X> s.t. <A_k,X> = b_k.
  double max_a = 0.0, ratio = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = frob(p.f[k]);
    max_a = std::max(max_a, a);
    ratio = std::max(ratio, (1.0 + std::abs(p.b(static_cast<Eigen::Index>(k)))) / (1.0 + a));
  }
  const double sqn = std::sqrt(static_cast<double>(n_total));
  const double xi = std::max({10.0, sqn, n_total * ratio});
  const double eta = std::max({10.0, sqn, max_a, frob(p.f0)});

  BlockMatrix x = p.zero_block_matrix(), z = p.zero_block_matrix();
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j].diagonal) {
      x[j].setConstant(xi);
      z[j].setConstant(eta);
    } else {
      x[j] = xi * Mat::Identity(blocks[j].size, blocks[j].size);
      z[j] = eta * Mat::Identity(blocks[j].size, blocks[j].size);
    }
  }
  Vec y = Vec::Zero(mi);

  const double norm_b = p.b.norm();
  const double norm_c = frob(p.f0);
  Solution sol;

  auto residuals = [&](Vec& rp, BlockMatrix& rd) {
    rp.resize(mi);
    for (std::size_t k = 0; k < m; ++k) rp(static_cast<Eigen::Index>(k)) = p.b(static_cast<Eigen::Index>(k)) + inner(blocks, p.f[k], x);
    rd = p.slack(y);
    axpy(rd, -1.0, z);
  };

  for (int iter = 0;; ++iter) {
    Vec rp;
    BlockMatrix rd;
    residuals(rp, rd);
    const double pobj = p.b.dot(y);
    const double dobj = inner(blocks, p.f0, x);
    const double xz = inner(blocks, x, z);
    const double gap = std::max(std::abs(dobj - pobj), xz) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double pinf = rp.norm() / (1.0 + norm_b);
    const double dinf = frob(rd) / (1.0 + norm_c);
    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.duality_gap = gap;
    sol.infeasibility = std::max(pinf, dinf);
    sol.y = y;
    sol.x = x;
    sol.iterations = iter;

    if (gap < opt.gap_tol && pinf < opt.feasibility_tol && dinf < opt.feasibility_tol) {
      sol.status = Status::Optimal;
      return sol;
    }
    if (y.norm() > 1e12 || frob(x) > 1e12) {
      sol.status = Status::Infeasible;
      return sol;
    }
    if (iter >= opt.max_iterations) {
      sol.status = Status::MaxIterations;
      return sol;
    }

    // Z^{-1} and the Schur complement M_kj = tr(F_k X F_j Z^{-1}).
    BlockMatrix zinv = p.zero_block_matrix();
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (blocks[j].diagonal) {
        zinv[j] = z[j].cwiseInverse();
      } else {
        Eigen::LLT<Mat> llt(z[j]);
        if (llt.info() != Eigen::Success) {
          sol.status = Status::NumericalFailure;
          return sol;
        }
        zinv[j] = sym(llt.solve(Mat::Identity(blocks[j].size, blocks[j].size)));
      }
    }
    Mat schur = Mat::Zero(mi, mi);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (blocks[j].diagonal) {
        const Vec w = x[j].col(0).cwiseProduct(zinv[j].col(0));
        Mat fk(blocks[j].size, mi);
        for (std::size_t k = 0; k < m; ++k) fk.col(static_cast<Eigen::Index>(k)) = p.f[k][j].col(0);
        schur += fk.transpose() * w.asDiagonal() * fk;
        continue;
      }
      std::vector<Mat> w(m);
      for (std::size_t k = 0; k < m; ++k) w[k] = x[j] * p.f[k][j] * zinv[j];
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k; l < m; ++l) {
          const double v = p.f[k][j].cwiseProduct(w[l]).sum();
          schur(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) += v;
          if (l != k) schur(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) += v;
        }
    }
    Eigen::LDLT<Mat> ldlt(schur);
    if (ldlt.info() != Eigen::Success) {
      sol.status = Status::NumericalFailure;
      return sol;
    }

    // Solves for (dX, dy, dZ) given the complementarity target `g`:
    // dX = g - sym(X dZ Z^{-1}).
    auto direction = [&](const BlockMatrix& g, BlockMatrix& dx, Vec& dy, BlockMatrix& dz) {
      BlockMatrix full = g;  // g - X Rd Z^{-1}
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (blocks[j].diagonal)
          full[j] -= x[j].cwiseProduct(rd[j]).cwiseProduct(zinv[j]);
        else
          full[j] -= x[j] * rd[j] * zinv[j];
      }
      Vec rhs(mi);
      for (std::size_t k = 0; k < m; ++k) rhs(static_cast<Eigen::Index>(k)) = rp(static_cast<Eigen::Index>(k)) + inner(blocks, p.f[k], full);
      dy = ldlt.solve(rhs);
      dz = rd;
      for (std::size_t k = 0; k < m; ++k) axpy(dz, dy(static_cast<Eigen::Index>(k)), p.f[k]);
      dx = g;
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (blocks[j].diagonal)
          dx[j] -= x[j].cwiseProduct(dz[j]).cwiseProduct(zinv[j]);
        else
          dx[j] -= sym(x[j] * dz[j] * zinv[j]);
      }
    };

    const double mu = xz / n_total;

    // Predictor.
    BlockMatrix g = x;
    for (auto& blk : g) blk = -blk;
    BlockMatrix dxa, dza;
    Vec dya;
    direction(g, dxa, dya, dza);
    const double ap = std::min(1.0, max_step(blocks, x, dxa));
    const double ad = std::min(1.0, max_step(blocks, z, dza));
    BlockMatrix xa = x, za = z;
    axpy(xa, ap, dxa);
    axpy(za, ad, dza);
    const double mu_aff = inner(blocks, xa, za) / n_total;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector.
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (blocks[j].diagonal) {
        g[j] = (sigma * mu) * zinv[j] - x[j] - dxa[j].cwiseProduct(dza[j]).cwiseProduct(zinv[j]);
      } else {
        g[j] = sigma * mu * zinv[j] - x[j] - sym(dxa[j] * dza[j] * zinv[j]);
      }
    }
    BlockMatrix dx, dz;
    Vec dy;
    direction(g, dx, dy, dz);
    const double step_p = std::min(1.0, opt.step_fraction * max_step(blocks, x, dx));
    const double step_d = std::min(1.0, opt.step_fraction * max_step(blocks, z, dz));
    if (step_p < 1e-12 && step_d < 1e-12) {
      sol.status = Status::NumericalFailure;
      return sol;
    }
    axpy(x, step_p, dx);
    y += step_d * dy;
    axpy(z, step_d, dz);
  }
}

}  // namespace hardy::sdp
