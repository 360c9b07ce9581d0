#include "hardy/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hardy/io.hpp"

namespace hardy {

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

Observable::Observable() : m_(Eigen::Matrix2cd::Identity()) { m_(1, 1) = -1.0; }

Observable::Observable(const Eigen::Matrix2cd& m) : m_(m) {}

Observable Observable::sigma_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return Observable(m);
}

Observable Observable::rotated(double angle, double phase) {
  const Complex e = std::polar(1.0, phase);
  Eigen::Vector2cd u0(std::cos(angle / 2), e * std::sin(angle / 2));
  Eigen::Vector2cd u1(-std::sin(angle / 2), e * std::cos(angle / 2));
  return Observable(u0 * u0.adjoint() - u1 * u1.adjoint());
}

Eigen::Matrix2cd Observable::projector(Outcome o) const {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return o == Outcome::Plus ? ((id + m_) / 2.0).eval() : ((id - m_) / 2.0).eval();
}

double Observable::hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

double Observable::involution_error() const {
  return (m_ * m_ - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

namespace {

double checked_asin_sqrt(double arg, const char* what) {
  constexpr double kSlack = 1e-12;
  if (arg < -kSlack || arg > 1.0 + kSlack) {
    throw DomainError(std::string("square-root argument for ") + what + " outside [0,1]");
  }
  return 2.0 * std::asin(std::sqrt(std::clamp(arg, 0.0, 1.0)));
}

}  // namespace

MeasurementAngles angles_from_params(const HardyParams& p, Phases phases) {
  const double r = p.r(), s = p.s(), t = p.t();
  MeasurementAngles a;
  a.alpha = checked_asin_sqrt(r * s, "alpha");
  a.beta = checked_asin_sqrt(r * t, "beta");
  a.gamma = checked_asin_sqrt(r * p.h() / ((1 - r * s) * (1 - r * t)), "gamma");
  a.phases = phases;
  return a;
}

MeasurementSet hardy_measurements(const MeasurementAngles& a) {
  const Observable z = Observable::sigma_z();
  return {{{z, Observable::rotated(a.alpha, a.phases.phi)},
           {z, Observable::rotated(a.beta, a.phases.xi)},
           {z, Observable::rotated(a.gamma, a.phases.eta)}}};
}

StateVector hardy_state(const HardyParams& p, Phases ph) {
  const double r = p.r(), s = p.s(), t = p.t(), h = p.h();
  const double q = 1.0 - r;
  const double us = 1.0 - r * s;
  const double ut = 1.0 - r * t;
  auto e = [](double angle) { return std::polar(1.0, angle); };

  StateVector psi;
  auto& amp = psi.amplitudes;
  amp[0b000] = std::sqrt(q * r * r * s * t * h / (us * ut));
  amp[0b100] = -e(ph.phi) * std::sqrt(q * r * t * h / ut);
  amp[0b010] = -e(ph.xi) * std::sqrt(q * r * s * h / us);
  amp[0b001] = -e(ph.eta) * std::sqrt(q * q * r * s * t / (us * ut));
  amp[0b011] = e(ph.xi + ph.eta) * std::sqrt(q * q * s / us);
  amp[0b110] = e(ph.phi + ph.xi) * std::sqrt(q * h);
  amp[0b101] = e(ph.phi + ph.eta) * std::sqrt(q * q * t / ut);
  amp[0b111] = e(ph.phi + ph.xi + ph.eta) * std::sqrt(r);
  return psi;
}

Behavior born_behavior(const StateVector& state, const MeasurementSet& m) {
  Eigen::Matrix<Complex, 8, 1> psi;
  for (int k = 0; k < 8; ++k) psi(k) = state.amplitudes[static_cast<std::size_t>(k)];

  Behavior::Table table{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
              const Eigen::Matrix2cd pa = m[0][static_cast<std::size_t>(x)].projector(outcome_from_index(a));
              const Eigen::Matrix2cd pb = m[1][static_cast<std::size_t>(y)].projector(outcome_from_index(b));
              const Eigen::Matrix2cd pc = m[2][static_cast<std::size_t>(z)].projector(outcome_from_index(c));
              Eigen::Matrix<Complex, 8, 8> proj;
              for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                  proj(i, j) = pa(i >> 2, j >> 2) * pb((i >> 1) & 1, (j >> 1) & 1) * pc(i & 1, j & 1);
              table[Behavior::index(x, y, z, a, b, c)] = (psi.adjoint() * proj * psi)(0, 0).real();
            }
  return make_unchecked(table);
}

Behavior born_behavior(const StateVector& state, const MeasurementAngles& angles) {
  return born_behavior(state, hardy_measurements(angles));
}

OptimalConstruction optimal_construction() {
  const double k = 17.0 + 3.0 * std::sqrt(33.0);
  const double k13 = std::cbrt(k);
  const double a2 = (k13 * k13 - k13 - 2.0) / (3.0 * k13);

  // Real, positive alpha and beta; any common phase choice gives an
  // equivalent strategy.
  const double al = std::sqrt(a2);
  const double be = std::sqrt(1.0 - a2);
  const double d = std::sqrt(1.0 - a2 * a2 * a2);
  const double c0 = std::pow(al, 3) * std::pow(be, 3) / d;
  const double c1 = -be * std::pow(al, 4) * be / d;
  const double c2 = be * be * std::pow(al, 5) / (be * d);
  const double c3 = std::pow(be, 3) * d / std::pow(be, 3);

  OptimalConstruction out;
  out.alpha_sq = a2;
  for (int k8 = 0; k8 < 8; ++k8) {
    switch (std::popcount(static_cast<unsigned>(k8))) {
      case 0: out.state.amplitudes[static_cast<std::size_t>(k8)] = c0; break;
      case 1: out.state.amplitudes[static_cast<std::size_t>(k8)] = c1; break;
      case 2: out.state.amplitudes[static_cast<std::size_t>(k8)] = c2; break;
      default: out.state.amplitudes[static_cast<std::size_t>(k8)] = c3; break;
    }
  }

  const Complex alpha(al, 0.0), beta(be, 0.0);
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  const Complex i(0.0, 1.0);
  const Eigen::Matrix2cd m1 = (alpha * std::conj(beta) + std::conj(alpha) * beta) * sx -
                              i * (alpha * std::conj(beta) - std::conj(alpha) * beta) * sy +
                              (std::norm(alpha) - std::norm(beta)) * sz;
  const Observable z = Observable::sigma_z();
  const Observable one(m1);
  out.measurements = {{{z, one}, {z, one}, {z, one}}};
  return out;
}

namespace {

struct Coords {
  double r, s, u;
};

double objective(const Coords& c) {
  if (c.r <= 0 || c.r >= 1 || c.s <= 0 || c.s >= 1 || c.u <= 0 || c.u >= 1) return -1.0;
  const double t = c.u * (1 - c.s) / (1 - c.r * c.s);
  return omega(c.r, c.s, t);
}

}  // namespace

HardyOptimum maximize_hardy_probability(int grid_points) {
  if (grid_points < 2) throw DomainError("grid_points must be >= 2");
  Coords best{0.5, 0.5, 0.5};
  double best_val = objective(best);
  for (int i = 1; i <= grid_points; ++i)
    for (int j = 1; j <= grid_points; ++j)
      for (int k = 1; k <= grid_points; ++k) {
        const double n = grid_points + 1;
        const Coords c{i / n, j / n, k / n};
        const double v = objective(c);
        if (v > best_val) {
          best_val = v;
          best = c;
        }
      }

  // Compass search; the objective is smooth near the maximizer.
  double step = 1.0 / (grid_points + 1);
  while (step > 1e-12) {
    bool improved = false;
    for (int axis = 0; axis < 3; ++axis)
      for (double dir : {+1.0, -1.0}) {
        Coords c = best;
        (axis == 0 ? c.r : axis == 1 ? c.s : c.u) += dir * step;
        const double v = objective(c);
        if (v > best_val) {
          best_val = v;
          best = c;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  const double t = best.u * (1 - best.s) / (1 - best.r * best.s);
  return {best.r, best.s, t, best_val};
}

std::string state_to_json(const StateVector& state) {
  std::string out = "[";
  for (std::size_t k = 0; k < 8; ++k) {
    if (k) out += ", ";
    out += "[" + io::format_double(state.amplitudes[k].real()) + ", " +
           io::format_double(state.amplitudes[k].imag()) + "]";
  }
  return out + "]";
}

}  // namespace hardy
