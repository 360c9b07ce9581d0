#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/quantum.hpp"

using namespace hardy;

namespace {

double max_diff(const Behavior& a, const Behavior& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < Behavior::kSize; ++k) d = std::max(d, std::abs(a.table()[k] - b.table()[k]));
  return d;
}

}  // namespace

TEST_CASE("observables are hermitian involutions") {
  for (double a : {0.0, 0.3, 1.7, 3.1})
    for (double ph : {0.0, 0.9, -2.0}) {
      const Observable o = Observable::rotated(a, ph);
      CHECK(o.hermiticity_error() < 1e-15);
      CHECK(o.involution_error() < 1e-14);
      const Eigen::Matrix2cd sum = o.projector(Outcome::Plus) + o.projector(Outcome::Minus);
      CHECK((sum - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
    }
}

TEST_CASE("born rule reproduces the closed form with arbitrary phases") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  while (tested < 30) {
    const double r = u(rng), s = u(rng), t = u(rng) * (1 - s) / (1 - r * s);
    if (!HardyParams::in_domain(r, s, t)) continue;
    const HardyParams p(r, s, t);
    const Phases ph{6.28 * u(rng), 6.28 * u(rng), 6.28 * u(rng)};
    const StateVector psi = hardy_state(p, ph);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_diff(born_behavior(psi, angles_from_params(p, ph)), hardy_behavior(p)) < 1e-10);
    ++tested;
  }
}

TEST_CASE("optimal construction reaches the quantum maximum") {
  const auto opt = optimal_construction();
  const Behavior b = born_behavior(opt.state, opt.measurements);
  CHECK(check_hardy_constraints(b, 1e-10).all_pass());
  CHECK(b(0, 0, 0, 0, 0, 0) == doctest::Approx(0.018194).epsilon(1e-3));
  CHECK(opt.alpha_sq > 0.0);
  CHECK(opt.alpha_sq < 1.0);
}

TEST_CASE("grid and refine maximization") {
  const auto best = maximize_hardy_probability(24);
  CHECK(best.r == doctest::Approx(0.8392).epsilon(2e-3));
  CHECK(best.s == doctest::Approx(0.5436).epsilon(2e-3));
  CHECK(best.t == doctest::Approx(0.5436).epsilon(2e-3));
  CHECK(best.value == doctest::Approx(0.0181938).epsilon(1e-5));
}
