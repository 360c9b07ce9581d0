#pragma once

#include <array>
#include <string>
#include <vector>

#include "hardy/behavior.hpp"
#include "hardy/simplex.hpp"

namespace hardy::ontic {

/// Outcome of each party for each setting: outputs[party][setting].
struct DeterministicStrategy {
  std::array<std::array<Outcome, 2>, 3> outputs{};

  Behavior behavior() const { return deterministic_behavior(outputs); }
  std::string label() const;
};

/// Bipartite 2-setting / 2-outcome box P(a,b|x,y), index ((x*2+y)*2+a)*2+b.
struct BipartiteBox {
  std::array<double, 16> p{};

  static constexpr std::size_t index(int a, int b, int x, int y) {
    return static_cast<std::size_t>(((x * 2 + y) * 2 + a) * 2 + b);
  }
  double operator()(int a, int b, int x, int y) const { return p[index(a, b, x, y)]; }

  /// Correlator E(x,y) = sum_ab (-1)^(a+b) P(a,b|x,y).
  double correlator(int x, int y) const;
  /// Largest value over the eight CHSH variants; the local bound is 2.
  double max_chsh() const;
  bool is_no_signalling(double tol) const;
};

enum class BoxTag { LocalDeterministic, PR };

struct NSExtremalPair {
  BipartiteBox box;
  BoxTag tag = BoxTag::LocalDeterministic;
};

/// Vertices of the bipartite no-signalling polytope: every basic feasible
/// solution of {normalization, no-signalling, p >= 0} is enumerated, then
/// each candidate is confirmed extremal by an LP showing it is not a convex
/// combination of the others.
std::vector<NSExtremalPair> enumerate_bipartite_vertices();

/// True when `target` is a convex combination of `others` (LP feasibility).
bool in_convex_hull(const BipartiteBox& target, const std::vector<BipartiteBox>& others);

enum class Bipartition { A_BC, B_AC, C_AB };

std::string to_string(Bipartition b);

/// One party deterministic, the other two sharing a no-signalling vertex.
struct NSBLStrategy {
  Bipartition split = Bipartition::A_BC;
  std::array<Outcome, 2> solo{};
  NSExtremalPair pair;

  Behavior behavior() const;
  std::string label() const;
};

struct StrategySet {
  std::vector<std::string> labels;
  std::vector<Behavior> behaviors;

  std::size_t size() const { return behaviors.size(); }
  void push_back(std::string label, Behavior b) {
    labels.push_back(std::move(label));
    behaviors.push_back(b);
  }
};

std::vector<DeterministicStrategy> fully_local_strategies();
StrategySet enumerate_fully_local();

/// 3 bipartitions x 4 solo tables x 24 pair vertices = 288 behaviors. The
/// fully-local behaviors appear once per bipartition.
StrategySet enumerate_nsbl();

struct HardyLpOptions {
  bool include_triple_zero = true;  // p(-1,-1,-1|1,1,1) = 0
};

struct ModelOptimum {
  double value = 0.0;
  std::vector<double> weights;
  lp::Status status = lp::Status::Optimal;
};

/// maximize sum_l mu_l p_l(+,+,+|0,0,0) subject to mu >= 0, sum mu = 1 and
/// the Hardy zeros imposed on the mixture.
ModelOptimum max_hardy_over_model(const StrategySet& strategies, const HardyLpOptions& options = {});

struct PredictabilityReport {
  double observed_p_hardy = 0.0;
  double model_max = 0.0;
  bool expressible = false;
};

/// Compares the behavior's Hardy probability with the largest value any
/// mixture of NSBL strategies can reach under the same zeros. Throws
/// DomainError if `b` violates the zeros beyond `tol`.
PredictabilityReport check_predictability_failure(const Behavior& b, double tol = 1e-9);

}  // namespace hardy::ontic
