#include "hardy/npa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "hardy/io.hpp"
#include "hardy/parallel.hpp"
#include "hardy/simplex.hpp"

namespace hardy::npa {

std::string to_string(Level l) {
  switch (l) {
    case Level::Level1: return "level1";
    case Level::Local1: return "local1";
    case Level::Level2: return "level2";
  }
  return "?";
}

Level parse_level(const std::string& text) {
  if (text == "level1") return Level::Level1;
  if (text == "local1") return Level::Local1;
  if (text == "level2") return Level::Level2;
  throw DomainError("unknown NPA level '" + text + "' (expected level1, local1 or level2)");
}

std::string reduce_word(const std::string& w) {
  std::string out;
  for (char c : w)
    if (out.empty() || out.back() != c) out.push_back(c);
  return out;
}

std::string Monomial::key() const {
  static const char party[3] = {'A', 'B', 'C'};
  std::string out;
  for (int p = 0; p < 3; ++p)
    for (char c : words[static_cast<std::size_t>(p)]) {
      out.push_back(party[p]);
      out.push_back(c);
    }
  return out.empty() ? "1" : out;
}

Monomial Monomial::adjoint() const {
  Monomial m = *this;
  for (auto& w : m.words) std::reverse(w.begin(), w.end());
  return m;
}

namespace {

Monomial canonical(const Monomial& m) { return std::min(m, m.adjoint()); }

Monomial product(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t p = 0; p < 3; ++p) m.words[p] = reduce_word(a.words[p] + b.words[p]);
  return m;
}

int degree(const Monomial& m) {
  int d = 0;
  for (const auto& w : m.words) d += static_cast<int>(w.size());
  return d;
}

}  // namespace

Monomial moment_of(const Monomial& left, const Monomial& right) { return canonical(product(left.adjoint(), right)); }

std::vector<Monomial> build_basis(Level level) {
  std::vector<Monomial> basis;
  if (level == Level::Level1) {
    basis.push_back({});
    for (std::size_t p = 0; p < 3; ++p)
      for (const char* x : {"0", "1"}) {
        Monomial m;
        m.words[p] = x;
        basis.push_back(m);
      }
    return basis;
  }
  const char* letters[3] = {"", "0", "1"};
  for (const char* a : letters)
    for (const char* b : letters)
      for (const char* c : letters) basis.push_back({{a, b, c}});
  std::stable_sort(basis.begin(), basis.end(),
                   [](const Monomial& l, const Monomial& r) { return degree(l) < degree(r); });
  if (level == Level::Level2)
    for (std::size_t p = 0; p < 3; ++p)
      for (const char* w : {"01", "10"}) {
        Monomial m;
        m.words[p] = w;
        basis.push_back(m);
      }
  return basis;
}

void LinearForm::add(int id, double coef) {
  auto& v = terms[id];
  v += coef;
  if (v == 0.0) terms.erase(id);
}

double LinearForm::evaluate(const std::vector<double>& moments) const {
  double sum = 0.0;
  for (const auto& [id, c] : terms) sum += c * moments[static_cast<std::size_t>(id)];
  return sum;
}

int MomentProblem::intern(const Monomial& m) {
  const Monomial c = canonical(m);
  auto it = moment_ids.find(c);
  if (it != moment_ids.end()) return it->second;
  const int id = static_cast<int>(moments.size());
  moments.push_back(c);
  moment_ids.emplace(c, id);
  return id;
}

LinearForm MomentProblem::probability(std::array<int, 3> outcomes, Settings settings) {
  const int s[3] = {settings.x, settings.y, settings.z};
  LinearForm form;
  // Each -1 outcome contributes (1 - P); pick the identity or -P per party.
  for (int mask = 0; mask < 8; ++mask) {
    Monomial m;
    double coef = 1.0;
    bool skip = false;
    for (int p = 0; p < 3; ++p) {
      const bool use_p = (mask >> p) & 1;
      if (outcomes[static_cast<std::size_t>(p)] == 0) {
        if (!use_p) {
          skip = true;
          break;
        }
      } else if (use_p) {
        coef = -coef;
      }
      if (use_p) m.words[static_cast<std::size_t>(p)] = std::string(1, static_cast<char>('0' + s[p]));
    }
    if (!skip) form.add(intern(m), coef);
  }
  return form;
}

namespace {

MomentProblem base_problem(Level level) {
  MomentProblem prob;
  prob.level = level;
  prob.basis = build_basis(level);
  prob.intern(Monomial{});
  const std::size_t n = prob.basis.size();
  prob.index_map.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prob.index_map[i][j] = prob.intern(moment_of(prob.basis[i], prob.basis[j]));

  LinearForm norm;
  norm.add(0, 1.0);
  prob.equalities.push_back({norm, 1.0, "normalization"});

  // Pairwise zeros are two-party projector moments.
  auto pair_zero = [&](std::size_t p1, char x1, std::size_t p2, char x2, const char* name) {
    Monomial m;
    m.words[p1] = std::string(1, x1);
    m.words[p2] = std::string(1, x2);
    LinearForm f;
    f.add(prob.intern(m), 1.0);
    prob.equalities.push_back({f, 0.0, name});
  };
  pair_zero(0, '1', 1, '0', "p_AB(+1,+1|1,0)");
  pair_zero(1, '1', 2, '0', "p_BC(+1,+1|1,0)");
  pair_zero(0, '0', 2, '1', "p_AC(+1,+1|0,1)");
  prob.equalities.push_back({prob.probability({1, 1, 1}, {1, 1, 1}), 0.0, "p(-1,-1,-1|1,1,1)"});

  if (level == Level::Level1)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
          for (int o = 0; o < 8; ++o)
            prob.nonnegative.push_back(prob.probability({(o >> 2) & 1, (o >> 1) & 1, o & 1}, {x, y, z}));
  return prob;
}

}  // namespace

MomentProblem hardy_moment_problem(std::optional<double> delta, const Target& target, Level level) {
  if (delta && !(*delta >= 0.0 && *delta <= kMaxDelta))
    throw DomainError("delta must lie in [0, " + io::format_double(kMaxDelta) + "]");
  for (int o : target.outcomes)
    if (o != 0 && o != 1) throw DomainError("target outcome index must be 0 or 1");
  MomentProblem prob = base_problem(level);
  if (delta) prob.equalities.push_back({prob.probability({0, 0, 0}, {0, 0, 0}), *delta, "p_H"});
  prob.objective = prob.probability(target.outcomes, target.settings);
  prob.description = "maximize p(" + std::to_string(target.outcomes[0]) + std::to_string(target.outcomes[1]) +
                     std::to_string(target.outcomes[2]) + "|" + to_string(target.settings) + ")" +
                     (delta ? " at p_H = " + io::format_double(*delta) : "");
  return prob;
}

MomentProblem max_hardy_problem(Level level) {
  MomentProblem prob = base_problem(level);
  prob.objective = prob.probability({0, 0, 0}, {0, 0, 0});
  prob.description = "maximize p_H";
  return prob;
}

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Polynomial in monomials, used for the zero operators of facial reduction.
using Poly = std::map<Monomial, double>;

Poly poly_product(const Monomial& left, const Poly& p) {
  Poly out;
  for (const auto& [m, c] : p) {
    auto& v = out[product(left, m)];
    v += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

// Orthonormal basis of the column space of m.
Mat orthonormal_columns(const Mat& m, double tol = 1e-9) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(tol);
  const Eigen::Index rank = qr.rank();
  const Mat q = qr.householderQ() * Mat::Identity(m.rows(), rank);
  return q;
}

double residual_norm(const Mat& q, const Vec& u) {
  if (q.cols() == 0) return u.norm();
  return (u - q * (q.transpose() * u)).norm();
}

struct Reduction {
  Mat equalities;  // rows over moment ids
  Vec rhs;
  Mat face;        // basis_size x r, orthonormal
  std::vector<int> lp_rows;  // nonnegative rows still inequalities
};

class Reducer {
 public:
  explicit Reducer(const MomentProblem& p) : p_(p), n_(p.basis.size()), ids_(p.moments.size()) {
    for (const auto& eq : p.equalities) add_row(eq.form, eq.rhs);
    for (std::size_t i = 0; i < n_; ++i) basis_index_[p.basis[i]] = static_cast<int>(i);
    build_candidates();
    for (std::size_t i = 0; i < p.nonnegative.size(); ++i) lp_rows_.push_back(static_cast<int>(i));
  }

  Reduction run() {
    while (true) {
      const bool a = facial_pass();
      const bool b = lp_pass();
      if (!a && !b) break;
    }
    Reduction r;
    r.equalities = rows_matrix();
    r.rhs = Eigen::Map<const Vec>(rhs_.data(), static_cast<Eigen::Index>(rhs_.size()));
    Mat nulls(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(null_.size()));
    for (std::size_t k = 0; k < null_.size(); ++k) nulls.col(static_cast<Eigen::Index>(k)) = null_[k];
    const Mat qn = orthonormal_columns(nulls);
    if (qn.cols() == 0) {
      r.face = Mat::Identity(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    } else {
      // Complement of the null space through a full QR of its basis.
      Eigen::HouseholderQR<Mat> qr(qn);
      const Mat full = qr.householderQ() * Mat::Identity(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
      r.face = full.rightCols(static_cast<Eigen::Index>(n_) - qn.cols());
    }
    r.lp_rows = lp_rows_;
    return r;
  }

 private:
  void add_row(const LinearForm& f, double rhs) {
    Vec row = Vec::Zero(static_cast<Eigen::Index>(ids_));
    for (const auto& [id, c] : f.terms) row(id) = c;
    rows_.push_back(row);
    rhs_.push_back(rhs);
  }

  Mat rows_matrix() const {
    Mat m(static_cast<Eigen::Index>(rows_.size()), static_cast<Eigen::Index>(ids_));
    for (std::size_t i = 0; i < rows_.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows_[i].transpose();
    return m;
  }

  // Orthonormal basis of the row space of [E | f].
  Mat implied_space() const {
    Mat a(static_cast<Eigen::Index>(ids_) + 1, static_cast<Eigen::Index>(rows_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      a.col(static_cast<Eigen::Index>(i)).head(static_cast<Eigen::Index>(ids_)) = rows_[i];
      a(static_cast<Eigen::Index>(ids_), static_cast<Eigen::Index>(i)) = rhs_[i];
    }
    return orthonormal_columns(a);
  }

  void build_candidates() {
    for (std::size_t i = 0; i < n_; ++i) {
      Vec v = Vec::Zero(static_cast<Eigen::Index>(n_));
      v(static_cast<Eigen::Index>(i)) = 1.0;
      candidates_.push_back(v);
    }
    // Zero events as operators: P_A1 P_B0, P_B1 P_C0, P_A0 P_C1 and
    // (1 - P_A1)(1 - P_B1)(1 - P_C1), each also multiplied on the left by
    // basis monomials.
    std::vector<Poly> zeros;
    zeros.push_back({{Monomial{{"1", "0", ""}}, 1.0}});
    zeros.push_back({{Monomial{{"", "1", "0"}}, 1.0}});
    zeros.push_back({{Monomial{{"0", "", "1"}}, 1.0}});
    Poly last;
    for (int mask = 0; mask < 8; ++mask) {
      Monomial m;
      double c = 1.0;
      for (std::size_t q = 0; q < 3; ++q)
        if ((mask >> q) & 1) {
          m.words[q] = "1";
          c = -c;
        }
      last[m] = c;
    }
    zeros.push_back(last);
    for (const auto& z : zeros)
      for (const auto& left : p_.basis) {
        const Poly op = poly_product(left, z);
        Vec v = Vec::Zero(static_cast<Eigen::Index>(n_));
        bool fits = !op.empty();
        for (const auto& [m, c] : op) {
          auto it = basis_index_.find(m);
          if (it == basis_index_.end()) {
            fits = false;
            break;
          }
          v(it->second) += c;
        }
        if (fits && v.norm() > 0) candidates_.push_back(v);
      }
  }

  Vec quadratic_form(const Vec& v) const {
    Vec l = Vec::Zero(static_cast<Eigen::Index>(ids_) + 1);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        l(p_.index_map[i][j]) += v(static_cast<Eigen::Index>(i)) * v(static_cast<Eigen::Index>(j));
    return l;
  }

  bool facial_pass() {
    bool changed = false;
    bool progress = true;
    while (progress) {
      progress = false;
      const Mat implied = implied_space();
      Mat nulls(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(null_.size()));
      for (std::size_t k = 0; k < null_.size(); ++k) nulls.col(static_cast<Eigen::Index>(k)) = null_[k];
      const Mat qn = orthonormal_columns(nulls);
      for (const Vec& v : candidates_) {
        if (residual_norm(qn, v) <= 1e-9 * v.norm()) continue;
        const Vec l = quadratic_form(v);
        if (l.norm() == 0.0 || residual_norm(implied, l) > 1e-9 * l.norm()) continue;
        null_.push_back(v);
        for (std::size_t i = 0; i < n_; ++i) {
          LinearForm f;
          for (std::size_t j = 0; j < n_; ++j)
            if (v(static_cast<Eigen::Index>(j)) != 0.0) f.add(p_.index_map[i][j], v(static_cast<Eigen::Index>(j)));
          if (!f.terms.empty()) add_row(f, 0.0);
        }
        progress = changed = true;
        break;
      }
    }
    return changed;
  }

  // Rows of the nonnegative block that the equalities force to zero become
  // equalities themselves, so the LP block keeps an interior point.
  bool lp_pass() {
    if (lp_rows_.empty()) return false;
    const Mat e = rows_matrix();
    const auto m = static_cast<std::size_t>(e.rows());
    const std::size_t k = lp_rows_.size();
    const std::size_t nv = 2 * ids_ + k;
    bool changed = false;
    std::vector<int> keep;
    for (std::size_t target = 0; target < k; ++target) {
      lp::Problem prob(m + k, nv);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < ids_; ++j) {
          prob.at(i, j) = e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          prob.at(i, ids_ + j) = -e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        prob.b[i] = rhs_[i];
      }
      for (std::size_t r = 0; r < k; ++r) {
        const auto& form = p_.nonnegative[static_cast<std::size_t>(lp_rows_[r])];
        for (const auto& [id, c] : form.terms) {
          prob.at(m + r, static_cast<std::size_t>(id)) = c;
          prob.at(m + r, ids_ + static_cast<std::size_t>(id)) = -c;
        }
        prob.at(m + r, 2 * ids_ + r) = -1.0;
      }
      prob.c[2 * ids_ + target] = 1.0;
      const lp::Solution sol = lp::solve(prob);
      if (sol.status == lp::Status::Optimal && sol.objective <= 1e-10) {
        add_row(p_.nonnegative[static_cast<std::size_t>(lp_rows_[target])], 0.0);
        changed = true;
      } else {
        keep.push_back(lp_rows_[target]);
      }
    }
    lp_rows_ = keep;
    return changed;
  }

  const MomentProblem& p_;
  std::size_t n_;
  std::size_t ids_;
  std::vector<Vec> rows_;
  std::vector<double> rhs_;
  std::map<Monomial, int> basis_index_;
  std::vector<Vec> candidates_;
  std::vector<Vec> null_;
  std::vector<int> lp_rows_;
};

Mat gamma_matrix(const MomentProblem& p, const Vec& y) {
  const auto n = static_cast<Eigen::Index>(p.basis.size());
  Mat g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = y(p.index_map[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return g;
}

Vec form_vector(const LinearForm& f, std::size_t ids) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(ids));
  for (const auto& [id, c] : f.terms) v(id) = c;
  return v;
}

}  // namespace

SDPSolution solve_sdp(const MomentProblem& problem, const sdp::Options& options) {
  if (problem.basis.size() > 200) throw DomainError("moment matrix dimension exceeds 200");
  const std::size_t ids = problem.moments.size();
  const Reduction red = Reducer(problem).run();

  // y = y_p + Z z spans the solutions of the equalities.
  Eigen::JacobiSVD<Mat> svd(red.equalities, Eigen::ComputeFullV | Eigen::ComputeThinU);
  svd.setThreshold(1e-10);
  const Eigen::Index rank = svd.rank();
  const Vec yp = svd.solve(red.rhs);
  const Mat z = svd.matrixV().rightCols(static_cast<Eigen::Index>(ids) - rank);

  SDPSolution out;
  out.reduced_variables = static_cast<int>(z.cols());
  out.reduced_dimension = static_cast<int>(red.face.cols());
  if ((red.equalities * yp - red.rhs).cwiseAbs().maxCoeff() > 1e-8) {
    out.status = sdp::Status::Infeasible;
    return out;
  }

  sdp::LmiProblem lmi;
  if (red.face.cols() > 0) lmi.blocks.push_back({static_cast<int>(red.face.cols()), false});
  if (!red.lp_rows.empty()) lmi.blocks.push_back({static_cast<int>(red.lp_rows.size()), true});

  auto block_value = [&](const Vec& y) {
    sdp::BlockMatrix bm;
    if (red.face.cols() > 0) bm.push_back(red.face.transpose() * gamma_matrix(problem, y) * red.face);
    if (!red.lp_rows.empty()) {
      Mat d(static_cast<Eigen::Index>(red.lp_rows.size()), 1);
      for (std::size_t r = 0; r < red.lp_rows.size(); ++r)
        d(static_cast<Eigen::Index>(r), 0) =
            form_vector(problem.nonnegative[static_cast<std::size_t>(red.lp_rows[r])], ids).dot(y);
      bm.push_back(d);
    }
    return bm;
  };
  lmi.f0 = block_value(yp);
  for (Eigen::Index k = 0; k < z.cols(); ++k) lmi.f.push_back(block_value(z.col(k)));
  const Vec c = form_vector(problem.objective, ids);
  lmi.b = z.transpose() * c;

  Vec y = yp;
  if (z.cols() > 0 && !lmi.blocks.empty()) {
    const sdp::Solution sol = sdp::solve(lmi, options);
    out.status = sol.status;
    out.duality_gap = sol.duality_gap;
    out.iterations = sol.iterations;
    y = yp + z * sol.y;
  } else {
    out.status = sdp::Status::Optimal;
  }

  out.moment_values.assign(y.data(), y.data() + y.size());
  out.optimum = c.dot(y);
  out.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Mat>(gamma_matrix(problem, y), Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .minCoeff();
  for (const auto& eq : problem.equalities)
    out.max_residual = std::max(out.max_residual, std::abs(eq.form.evaluate(out.moment_values) - eq.rhs));
  if (out.status == sdp::Status::Optimal && out.min_eigenvalue < -1e-7) out.status = sdp::Status::NumericalFailure;
  return out;
}

namespace {

int severity(sdp::Status s) {
  switch (s) {
    case sdp::Status::Optimal: return 0;
    case sdp::Status::MaxIterations: return 1;
    case sdp::Status::NumericalFailure: return 2;
    case sdp::Status::Infeasible: return 3;
  }
  return 3;
}

}  // namespace

std::vector<CurvePoint> randomness_curve(const std::vector<double>& deltas, Level level,
                                         std::optional<Settings> settings, unsigned threads) {
  for (double d : deltas)
    if (!(d > 0.0 && d <= kMaxDelta)) throw DomainError("delta must lie in (0, " + std::to_string(kMaxDelta) + "]");
  std::vector<Target> targets;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int zz = 0; zz < 2; ++zz) {
        const Settings s{x, y, zz};
        if (settings && !(s == *settings)) continue;
        for (int o = 0; o < 8; ++o) targets.push_back({{(o >> 2) & 1, (o >> 1) & 1, o & 1}, s});
      }

  std::vector<SDPSolution> results(deltas.size() * targets.size());
  parallel_for(results.size(), threads, [&](std::size_t k) {
    const double d = deltas[k / targets.size()];
    results[k] = solve_sdp(hardy_moment_problem(d, targets[k % targets.size()], level));
  });

  std::vector<CurvePoint> curve;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    CurvePoint pt;
    pt.delta = deltas[i];
    pt.level = level;
    pt.settings = settings;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const auto& r = results[i * targets.size() + t];
      pt.guess_prob = std::max(pt.guess_prob, r.optimum);
      pt.gap = std::max(pt.gap, r.duality_gap);
      if (severity(r.status) > severity(pt.status)) pt.status = r.status;
    }
    pt.guess_prob = std::min(pt.guess_prob, 1.0);
    pt.bits = pt.guess_prob > 0.0 ? -std::log2(pt.guess_prob) : 0.0;
    if (pt.bits < 0.0) pt.bits = 0.0;
    curve.push_back(pt);
  }
  return curve;
}

std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "delta,level,settings,bits,status,gap\n";
  for (const auto& pt : curve) {
    out += io::format_double(pt.delta) + ',' + to_string(pt.level) + ',' +
           (pt.settings ? "\"" + to_string(*pt.settings) + "\"" : std::string("all")) + ',' +
           io::format_double(pt.bits) + ',' + sdp::to_string(pt.status) + ',' + io::format_double(pt.gap) + '\n';
  }
  return out;
}

std::string problem_to_json(const MomentProblem& p) {
  using nlohmann::json;
  auto form_json = [](const LinearForm& f) {
    json terms = json::array();
    for (const auto& [id, c] : f.terms) terms.push_back({id, c});
    return terms;
  };
  json j;
  j["schema"] = "hardy-moment-problem/1";
  j["level"] = to_string(p.level);
  j["description"] = p.description;
  j["basis"] = json::array();
  for (const auto& m : p.basis) j["basis"].push_back(m.key());
  j["moments"] = json::array();
  for (const auto& m : p.moments) j["moments"].push_back(m.key());
  j["index_map"] = p.index_map;
  j["objective"] = {{"sense", "maximize"}, {"terms", form_json(p.objective)}};
  j["equalities"] = json::array();
  for (const auto& e : p.equalities)
    j["equalities"].push_back({{"name", e.name}, {"terms", form_json(e.form)}, {"rhs", e.rhs}});
  j["nonnegative"] = json::array();
  for (const auto& f : p.nonnegative) j["nonnegative"].push_back(form_json(f));
  return j.dump(2) + "\n";
}

}  // namespace hardy::npa
