#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "hardy/behavior.hpp"

namespace hardy {

using Complex = std::complex<double>;

/// Three-qubit pure state; amplitude k belongs to |abc> with k = 4a + 2b + c.
struct StateVector {
  std::array<Complex, 8> amplitudes{};

  double norm() const;
  Complex operator[](std::size_t k) const { return amplitudes[k]; }
};

struct Phases {
  double phi = 0.0;
  double xi = 0.0;
  double eta = 0.0;
};

/// Rotation angles of the setting-1 bases (in [0, pi)) and their phases.
struct MeasurementAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  Phases phases;
};

/// Dichotomic qubit observable M = P(+1) - P(-1).
class Observable {
 public:
  Observable();  // sigma_z
  explicit Observable(const Eigen::Matrix2cd& m);

  static Observable sigma_z();
  /// |u0><u0| - |u1><u1| with u0 = cos(a/2)|0> + e^{i ph} sin(a/2)|1>,
  /// u1 = -sin(a/2)|0> + e^{i ph} cos(a/2)|1>.
  static Observable rotated(double angle, double phase);

  const Eigen::Matrix2cd& matrix() const { return m_; }
  Eigen::Matrix2cd projector(Outcome o) const;

  double hermiticity_error() const;
  double involution_error() const;  // || M^2 - I ||_max

 private:
  Eigen::Matrix2cd m_;
};

/// Observables indexed [party][setting].
using MeasurementSet = std::array<std::array<Observable, 2>, 3>;

MeasurementAngles angles_from_params(const HardyParams& params, Phases phases = {});

/// Setting 0 is sigma_z for every party; setting 1 uses the rotated bases.
MeasurementSet hardy_measurements(const MeasurementAngles& angles);

/// The Hardy state written in the computational basis, sign pattern as in
/// the closed form (|100>, |010>, |001> carry a minus sign).
StateVector hardy_state(const HardyParams& params, Phases phases = {});

/// Born-rule behavior Tr[rho A_a|x (x) B_b|y (x) C_c|z] via explicit 8x8
/// projector products.
Behavior born_behavior(const StateVector& state, const MeasurementSet& measurements);
Behavior born_behavior(const StateVector& state, const MeasurementAngles& angles);

struct OptimalConstruction {
  StateVector state;
  MeasurementSet measurements;
  double alpha_sq = 0.0;  // |alpha|^2, the real root of the optimality cubic
};

/// Permutation-symmetric state and common setting-1 observable reaching the
/// quantum maximum of p(+1,+1,+1|0,0,0).
OptimalConstruction optimal_construction();

struct HardyOptimum {
  double r = 0.0;
  double s = 0.0;
  double t = 0.0;
  double value = 0.0;
};

/// Maximizes the Hardy probability over the open domain: a coarse grid in
/// (r, s, u) with t = u (1-s)/(1-rs), followed by compass-search refinement.
HardyOptimum maximize_hardy_probability(int grid_points = 40);

/// [[re, im], ...] for |000> .. |111>.
std::string state_to_json(const StateVector& state);

}  // namespace hardy
