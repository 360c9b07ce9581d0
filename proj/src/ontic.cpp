#include "hardy/ontic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Dense>

namespace hardy::ontic {

namespace {

char sign_char(Outcome o) { return o == Outcome::Plus ? '+' : '-'; }

std::string outputs_label(const std::array<Outcome, 2>& o) { return {sign_char(o[0]), sign_char(o[1])}; }

std::array<Outcome, 2> solo_table(int code) {
  return {outcome_from_index(code & 1), outcome_from_index((code >> 1) & 1)};
}

}  // namespace

std::string DeterministicStrategy::label() const {
  return "FL[A" + outputs_label(outputs[0]) + " B" + outputs_label(outputs[1]) + " C" +
         outputs_label(outputs[2]) + "]";
}

double BipartiteBox::correlator(int x, int y) const {
  return (*this)(0, 0, x, y) + (*this)(1, 1, x, y) - (*this)(0, 1, x, y) - (*this)(1, 0, x, y);
}

double BipartiteBox::max_chsh() const {
  double best = -1e300;
  for (int mask = 0; mask < 16; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) % 2 == 0) continue;
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += ((mask >> k) & 1 ? -1.0 : 1.0) * correlator(k >> 1, k & 1);
    best = std::max(best, s);
  }
  return best;
}

bool BipartiteBox::is_no_signalling(double tol) const {
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a) {
      const double y0 = (*this)(a, 0, x, 0) + (*this)(a, 1, x, 0);
      const double y1 = (*this)(a, 0, x, 1) + (*this)(a, 1, x, 1);
      if (std::abs(y0 - y1) > tol) return false;
    }
  for (int y = 0; y < 2; ++y)
    for (int b = 0; b < 2; ++b) {
      const double x0 = (*this)(0, b, 0, y) + (*this)(1, b, 0, y);
      const double x1 = (*this)(0, b, 1, y) + (*this)(1, b, 1, y);
      if (std::abs(x0 - x1) > tol) return false;
    }
  return true;
}

bool in_convex_hull(const BipartiteBox& target, const std::vector<BipartiteBox>& others) {
  if (others.empty()) return false;
  lp::Problem prob(17, others.size());
  for (std::size_t k = 0; k < others.size(); ++k) {
    for (std::size_t i = 0; i < 16; ++i) prob.at(i, k) = others[k].p[i];
    prob.at(16, k) = 1.0;
  }
  for (std::size_t i = 0; i < 16; ++i) prob.b[i] = target.p[i];
  prob.b[16] = 1.0;
  return lp::solve(prob).status == lp::Status::Optimal;
}

std::vector<NSExtremalPair> enumerate_bipartite_vertices() {
  // Equality system: four normalizations and four no-signalling equations.
  Eigen::Matrix<double, 8, 16> eq = Eigen::Matrix<double, 8, 16>::Zero();
  Eigen::Matrix<double, 8, 1> rhs = Eigen::Matrix<double, 8, 1>::Zero();
  int row = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) eq(row, static_cast<int>(BipartiteBox::index(a, b, x, y))) = 1.0;
      rhs(row++) = 1.0;
    }
  for (int x = 0; x < 2; ++x) {  // p_A(+|x) equal for y = 0, 1
    for (int b = 0; b < 2; ++b) {
      eq(row, static_cast<int>(BipartiteBox::index(0, b, x, 0))) += 1.0;
      eq(row, static_cast<int>(BipartiteBox::index(0, b, x, 1))) -= 1.0;
    }
    ++row;
  }
  for (int y = 0; y < 2; ++y) {  // p_B(+|y) equal for x = 0, 1
    for (int a = 0; a < 2; ++a) {
      eq(row, static_cast<int>(BipartiteBox::index(a, 0, 0, y))) += 1.0;
      eq(row, static_cast<int>(BipartiteBox::index(a, 0, 1, y))) -= 1.0;
    }
    ++row;
  }

  // Basic solutions: choose 8 support columns, solve, keep nonnegative ones.
  std::vector<BipartiteBox> candidates;
  for (unsigned mask = 0; mask < (1u << 16); ++mask) {
    if (std::popcount(mask) != 8) continue;
    Eigen::Matrix<double, 8, 8> basis;
    std::array<int, 8> cols{};
    int k = 0;
    for (int j = 0; j < 16; ++j)
      if (mask & (1u << j)) cols[static_cast<std::size_t>(k++)] = j;
    for (int c = 0; c < 8; ++c) basis.col(c) = eq.col(cols[static_cast<std::size_t>(c)]);
    Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(basis);
    if (lu.rank() < 8) continue;
    const Eigen::Matrix<double, 8, 1> sol = lu.solve(rhs);
    if (sol.minCoeff() < -1e-12) continue;
    BipartiteBox box;
    for (int c = 0; c < 8; ++c) {
      const double v = std::abs(sol(c)) < 1e-12 ? 0.0 : sol(c);
      box.p[static_cast<std::size_t>(cols[static_cast<std::size_t>(c)])] = v;
    }
    const bool seen = std::any_of(candidates.begin(), candidates.end(), [&](const BipartiteBox& o) {
      for (std::size_t i = 0; i < 16; ++i)
        if (std::abs(o.p[i] - box.p[i]) > 1e-9) return false;
      return true;
    });
    if (!seen) candidates.push_back(box);
  }

  std::vector<NSExtremalPair> vertices;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::vector<BipartiteBox> others;
    for (std::size_t j = 0; j < candidates.size(); ++j)
      if (j != i) others.push_back(candidates[j]);
    if (in_convex_hull(candidates[i], others)) continue;
    const bool integral = std::all_of(candidates[i].p.begin(), candidates[i].p.end(),
                                      [](double v) { return v == 0.0 || std::abs(v - 1.0) < 1e-12; });
    vertices.push_back({candidates[i], integral ? BoxTag::LocalDeterministic : BoxTag::PR});
  }
  std::stable_sort(vertices.begin(), vertices.end(),
                   [](const NSExtremalPair& a, const NSExtremalPair& b) { return a.tag < b.tag; });
  return vertices;
}

std::string to_string(Bipartition b) {
  switch (b) {
    case Bipartition::A_BC: return "A|BC";
    case Bipartition::B_AC: return "B|AC";
    case Bipartition::C_AB: return "C|AB";
  }
  return "?";
}

Behavior NSBLStrategy::behavior() const {
  Behavior::Table t{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
              // (solo outcome, solo setting) and the pair's (o1,o2|s1,s2),
              // pair parties kept in A<B<C order.
              int so, ss, o1, o2, s1, s2;
              switch (split) {
                case Bipartition::A_BC: so = a, ss = x, o1 = b, o2 = c, s1 = y, s2 = z; break;
                case Bipartition::B_AC: so = b, ss = y, o1 = a, o2 = c, s1 = x, s2 = z; break;
                default: so = c, ss = z, o1 = a, o2 = b, s1 = x, s2 = y; break;
              }
              const double solo_p = index_of(solo[static_cast<std::size_t>(ss)]) == so ? 1.0 : 0.0;
              t[Behavior::index(x, y, z, a, b, c)] = solo_p * pair.box(o1, o2, s1, s2);
            }
  return make_unchecked(t);
}

std::string NSBLStrategy::label() const {
  std::string pair_tag = pair.tag == BoxTag::PR ? "PR" : "LD";
  std::string box;
  for (double v : pair.box.p) box += v == 0.0 ? '0' : (v == 1.0 ? '1' : 'h');
  return "NSBL[" + to_string(split) + " solo" + outputs_label(solo) + " " + pair_tag + ":" + box + "]";
}

std::vector<DeterministicStrategy> fully_local_strategies() {
  std::vector<DeterministicStrategy> out;
  out.reserve(64);
  for (int code = 0; code < 64; ++code) {
    DeterministicStrategy s;
    for (int party = 0; party < 3; ++party) s.outputs[static_cast<std::size_t>(party)] = solo_table((code >> (2 * party)) & 3);
    out.push_back(s);
  }
  return out;
}

StrategySet enumerate_fully_local() {
  StrategySet set;
  for (const auto& s : fully_local_strategies()) set.push_back(s.label(), s.behavior());
  return set;
}

StrategySet enumerate_nsbl() {
  const auto pairs = enumerate_bipartite_vertices();
  StrategySet set;
  for (Bipartition split : {Bipartition::A_BC, Bipartition::B_AC, Bipartition::C_AB})
    for (int code = 0; code < 4; ++code)
      for (const auto& pair : pairs) {
        NSBLStrategy s{split, solo_table(code), pair};
        set.push_back(s.label(), s.behavior());
      }
  return set;
}

namespace {

// The four zero functionals evaluated on a behavior. Pairwise marginals use
// setting 0 for the summed-out party (strategies are no-signalling).
std::array<double, 4> zero_values(const Behavior& b) {
  return {b.p_ab(0, 0, 1, 0, 0), b.p_bc(0, 0, 1, 0, 0), b.p_ac(0, 0, 0, 1, 0), b(1, 1, 1, 1, 1, 1)};
}

}  // namespace

ModelOptimum max_hardy_over_model(const StrategySet& strategies, const HardyLpOptions& options) {
  if (strategies.size() == 0) throw DomainError("strategy set is empty");
  const std::size_t n = strategies.size();
  const std::size_t zeros = options.include_triple_zero ? 4 : 3;
  lp::Problem prob(1 + zeros, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Behavior& b = strategies.behaviors[k];
    prob.at(0, k) = 1.0;
    const auto z = zero_values(b);
    for (std::size_t i = 0; i < zeros; ++i) prob.at(1 + i, k) = z[i];
    prob.c[k] = b(0, 0, 0, 0, 0, 0);
  }
  prob.b[0] = 1.0;

  const lp::Solution sol = lp::solve(prob);
  if (sol.status == lp::Status::Infeasible) {
    // The all-minus deterministic strategy satisfies every zero, so this
    // means the set lacks it and the zeros exclude everything else.
    throw DomainError("Hardy-zero LP infeasible over the supplied strategies");
  }
  return {sol.objective, sol.x, sol.status};
}

PredictabilityReport check_predictability_failure(const Behavior& b, double tol) {
  const auto z = zero_values(b);
  for (double v : z)
    if (std::abs(v) > tol) throw DomainError("behavior violates the Hardy zero constraints");

  static const double model_max = max_hardy_over_model(enumerate_nsbl()).value;
  PredictabilityReport rep;
  rep.observed_p_hardy = b(0, 0, 0, 0, 0, 0);
  rep.model_max = model_max;
  rep.expressible = rep.observed_p_hardy <= model_max + tol;
  return rep;
}

}  // namespace hardy::ontic
