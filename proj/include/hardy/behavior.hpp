#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardy {

/// Raised when an input lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Measurement outcome. Index 0 is the +1 outcome, index 1 is -1.
enum class Outcome : std::uint8_t { Plus = 0, Minus = 1 };

constexpr int index_of(Outcome o) { return static_cast<int>(o); }
constexpr int sign_of(Outcome o) { return o == Outcome::Plus ? +1 : -1; }
constexpr Outcome outcome_from_index(int i) { return i == 0 ? Outcome::Plus : Outcome::Minus; }
Outcome outcome_from_sign(int sign);

/// Setting triple (x, y, z), each 0 or 1.
struct Settings {
  int x = 0;
  int y = 0;
  int z = 0;

  friend bool operator==(const Settings&, const Settings&) = default;
};

Settings parse_settings(const std::string& text);  // "1,1,1"
std::string to_string(const Settings& s);

/// Default tolerance for probability identities.
inline constexpr double kProbabilityTolerance = 1e-12;

/// Tripartite 2-setting / 2-outcome behavior p(a,b,c|x,y,z).
///
/// Storage is row-major over (x, y, z, a, b, c) with outcome index 0 for +1,
/// so entries 0..7 hold the (0,0,0) row in the order +++, ++-, +-+, ... .
class Behavior {
 public:
  static constexpr std::size_t kSize = 64;
  using Table = std::array<double, kSize>;

  Behavior() { table_.fill(0.0); }

  /// Validates entries lie in [0,1] and every setting row sums to one,
  /// both within `tol`.
  explicit Behavior(const Table& table, double tol = 1e-9);

  static constexpr std::size_t index(int x, int y, int z, int a, int b, int c) {
    return static_cast<std::size_t>((((((x * 2 + y) * 2 + z) * 2 + a) * 2 + b) * 2) + c);
  }

  double operator()(int x, int y, int z, int a, int b, int c) const {
    return table_[index(x, y, z, a, b, c)];
  }
  double at(Settings s, Outcome a, Outcome b, Outcome c) const {
    return table_[index(s.x, s.y, s.z, index_of(a), index_of(b), index_of(c))];
  }

  /// The eight outcome probabilities for one setting triple, in storage order.
  std::array<double, 8> row(Settings s) const;

  std::span<const double, kSize> data() const { return table_; }
  const Table& table() const { return table_; }

  /// Sum over the unlisted parties. `parties` is a bitmask (1 = A, 2 = B,
  /// 4 = C) of the parties kept; `outcomes` and `settings` are indexed by
  /// party and ignored for parties not in the mask except for settings of
  /// summed-out parties, which select the row being marginalised.
  double marginal(unsigned parties, std::array<int, 3> outcomes, std::array<int, 3> settings) const;

  /// Two-party marginals; the summed-out party uses setting `other`.
  double p_ab(int a, int b, int x, int y, int z_other = 0) const;
  double p_bc(int b, int c, int y, int z, int x_other = 0) const;
  double p_ac(int a, int c, int x, int z, int y_other = 0) const;

  /// Entrywise convex mixture theta * lhs + (1 - theta) * rhs.
  static Behavior mix(const Behavior& lhs, const Behavior& rhs, double theta);

  friend bool operator==(const Behavior&, const Behavior&) = default;

 private:
  struct Unchecked {};
  Behavior(const Table& table, Unchecked) : table_(table) {}

  Table table_{};

  friend Behavior make_unchecked(const Table& table);
};

/// Builds a behavior without validation; reserved for tables whose
/// invariants hold by construction (products of valid tables, closed forms).
Behavior make_unchecked(const Behavior::Table& table);

/// The uniform behavior p = 1/8 on every row.
Behavior uniform_behavior();

/// Deterministic behavior with outcome `outputs[party][setting]`.
Behavior deterministic_behavior(const std::array<std::array<Outcome, 2>, 3>& outputs);

/// Parameters (r, s, t) of the Hardy family. Construction enforces the open
/// domain r in (0,1), s in (0,1), t in (0, (1-s)/(1-rs)).
class HardyParams {
 public:
  HardyParams(double r, double s, double t);

  double r() const { return r_; }
  double s() const { return s_; }
  double t() const { return t_; }
  /// h = 1 - s - t + r s t, strictly positive on the domain.
  double h() const { return 1.0 - s_ - t_ + r_ * s_ * t_; }

  static bool in_domain(double r, double s, double t);

 private:
  double r_;
  double s_;
  double t_;
};

/// Hardy success probability r^2 (1-r) s t h / ((1-rs)(1-rt)) evaluated
/// without any domain check; used by sweeps over the whole unit cube.
double omega(double r, double s, double t);

/// Closed-form Hardy behavior. Structural zeros are assigned, not computed.
Behavior hardy_behavior(const HardyParams& params);

/// p(+1,+1,+1|0,0,0) of the Hardy family.
double hardy_probability(const HardyParams& params);

struct ConstraintCheck {
  std::string name;
  double value = 0.0;
  bool pass = false;
};

struct HardyConstraintReport {
  std::array<ConstraintCheck, 4> checks;
  double p_hardy = 0.0;

  bool all_pass() const;
};

/// The four Hardy zeros: p_AB(+,+|1,0), p_BC(+,+|1,0), p_AC(+,+|0,1) and
/// p(-,-,-|1,1,1). Pairwise marginals sum over the third party's outcome.
HardyConstraintReport check_hardy_constraints(const Behavior& b, double tol = kProbabilityTolerance);

struct NoSignallingReport {
  double max_deviation = 0.0;
  std::string worst;  // human-readable location of the largest deviation
  bool pass = false;
};

/// Checks that every one- and two-party marginal is independent of the
/// settings of the parties summed out.
NoSignallingReport check_no_signalling(const Behavior& b, double tol = kProbabilityTolerance);

/// Largest |sum_abc p(abc|xyz) - 1| over the eight setting rows.
double normalization_error(const Behavior& b);

}  // namespace hardy
