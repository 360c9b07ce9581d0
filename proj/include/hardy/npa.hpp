#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardy/behavior.hpp"
#include "hardy/sdp.hpp"

namespace hardy::npa {

/// level1: identity and the six projectors (7). local1: every product of at
/// most one projector per party (27). level2: local1 plus the same-party
/// pairs P0 P1 and P1 P0 (33), so the three relaxations are nested.
enum class Level { Level1, Local1, Level2 };

std::string to_string(Level l);
Level parse_level(const std::string& text);

/// Product of +1-outcome projectors, one word per party. A word lists the
/// settings of consecutive projectors; P_x P_x = P_x keeps words free of
/// adjacent repeats. Parties commute, so a monomial is a tuple (A, B, C).
struct Monomial {
  std::array<std::string, 3> words;

  std::string key() const;   // "A0A1B1", "1" for the identity
  Monomial adjoint() const;  // every word reversed
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

std::string reduce_word(const std::string& w);

/// Canonical moment label of <m_i^dagger m_j>. Moments are taken real, so a
/// monomial and its adjoint share a label.
Monomial moment_of(const Monomial& left, const Monomial& right);

std::vector<Monomial> build_basis(Level level);

struct LinearForm {
  std::map<int, double> terms;  // moment id -> coefficient

  void add(int id, double coef);
  double evaluate(const std::vector<double>& moments) const;
};

struct Equality {
  LinearForm form;
  double rhs = 0.0;
  std::string name;
};

struct MomentProblem {
  Level level = Level::Local1;
  std::vector<Monomial> basis;
  std::vector<Monomial> moments;            // id -> canonical monomial; id 0 is the identity
  std::map<Monomial, int> moment_ids;
  std::vector<std::vector<int>> index_map;  // basis (i, j) -> moment id
  LinearForm objective;                     // maximized
  std::vector<Equality> equalities;
  std::vector<LinearForm> nonnegative;  // extra LP rows (level1 only)
  std::string description;

  int intern(const Monomial& m);
  /// p(a,b,c|x,y,z) by inclusion-exclusion over +1 projector moments.
  LinearForm probability(std::array<int, 3> outcomes, Settings settings);
};

/// Outcome indices (0 = +1) and settings of the maximized probability.
struct Target {
  std::array<int, 3> outcomes{};
  Settings settings;
};

/// Largest delta accepted by the randomness programs; the quantum maximum
/// of p(+1,+1,+1|0,0,0) is about 0.018194.
inline constexpr double kMaxDelta = 0.0182;

/// maximize p(target) subject to normalization, the four Hardy zeros and,
/// when `delta` is set, p(+1,+1,+1|0,0,0) = delta.
MomentProblem hardy_moment_problem(std::optional<double> delta, const Target& target, Level level);

/// maximize p(+1,+1,+1|0,0,0) subject to normalization and the Hardy zeros.
MomentProblem max_hardy_problem(Level level);

struct SDPSolution {
  double optimum = 0.0;
  std::vector<double> moment_values;
  sdp::Status status = sdp::Status::MaxIterations;
  double duality_gap = 0.0;
  double min_eigenvalue = 0.0;  // of the full moment matrix
  double max_residual = 0.0;    // over the equalities
  int iterations = 0;
  int reduced_variables = 0;
  int reduced_dimension = 0;
};

/// Facial reduction on the zero constraints, elimination of the equalities
/// and an interior-point solve of the remaining LMI.
SDPSolution solve_sdp(const MomentProblem& problem, const sdp::Options& options = {});

struct CurvePoint {
  double delta = 0.0;
  Level level = Level::Local1;
  std::optional<Settings> settings;  // empty: maximum over all 64 entries
  double guess_prob = 0.0;
  double bits = 0.0;
  sdp::Status status = sdp::Status::Optimal;  // worst over the targets
  double gap = 0.0;                           // largest over the targets
};

/// Guessing bound and certified bits per delta: bits = -log2 of the
/// largest SDP optimum over the outcome targets at `settings`.
std::vector<CurvePoint> randomness_curve(const std::vector<double>& deltas, Level level,
                                         std::optional<Settings> settings, unsigned threads = 0);

/// CSV `delta,level,settings,bits,status,gap`.
std::string curve_to_csv(const std::vector<CurvePoint>& curve);

/// Documented JSON export: basis words, moment labels, index map, the
/// objective and constraint triplets.
std::string problem_to_json(const MomentProblem& problem);

}  // namespace hardy::npa
