#include <doctest.h>

#include <cmath>

#include "hardy/npa.hpp"
#include "hardy/randomness.hpp"

using namespace hardy;

namespace {

// r with omega(r, s, s) = delta on the rising branch below the maximizer.
double r_for_delta(double delta, double s) {
  double lo = 1e-6, hi = 0.8392;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (omega(mid, s, s) < delta ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("word reduction and labels") {
  CHECK(npa::reduce_word("0010") == "010");
  CHECK(npa::reduce_word("") == "");
  npa::Monomial m{{"01", "", "1"}};
  CHECK(m.key() == "A0A1C1");
  CHECK(m.adjoint().key() == "A1A0C1");
  CHECK(npa::Monomial{}.key() == "1");
  const npa::Monomial a{{"0", "", ""}};
  CHECK(npa::moment_of(a, a).key() == "A0");
}

TEST_CASE("basis sizes") {
  CHECK(npa::build_basis(npa::Level::Level1).size() == 7);
  CHECK(npa::build_basis(npa::Level::Local1).size() == 27);
  const auto l2 = npa::build_basis(npa::Level::Level2);
  CHECK(l2.size() == 33);
  for (const auto& m : npa::build_basis(npa::Level::Local1))
    CHECK(std::find(l2.begin(), l2.end(), m) != l2.end());
  CHECK(npa::parse_level("local1") == npa::Level::Local1);
  CHECK_THROWS_AS(npa::parse_level("level9"), DomainError);
}

TEST_CASE("probability forms evaluate correctly on a product distribution") {
  auto prob = npa::max_hardy_problem(npa::Level::Level1);
  // Every projector has expectation 1/2 and parties are independent.
  std::vector<double> y(prob.moments.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    int parties = 0;
    for (const auto& w : prob.moments[k].words) parties += w.empty() ? 0 : 1;
    y[k] = std::pow(0.5, parties);
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) CHECK(prob.probability({a, b, c}, {1, 0, 1}).evaluate(y) == doctest::Approx(0.125));
}

TEST_CASE("max p_H relaxation contains the quantum optimum") {
  const auto sol = npa::solve_sdp(npa::max_hardy_problem(npa::Level::Local1));
  REQUIRE(sol.status == sdp::Status::Optimal);
  CHECK(sol.optimum >= 0.0181 - 1e-6);
  CHECK(sol.optimum <= 0.0182);
  CHECK(sol.min_eigenvalue >= -1e-6);
  CHECK(sol.max_residual <= 1e-6);
}

TEST_CASE("cyclic party symmetry of the guessing bound") {
  const auto a = npa::randomness_curve({0.01}, npa::Level::Local1, Settings{1, 0, 0}, 1);
  const auto b = npa::randomness_curve({0.01}, npa::Level::Local1, Settings{0, 1, 0}, 1);
  const auto c = npa::randomness_curve({0.01}, npa::Level::Local1, Settings{0, 0, 1}, 1);
  CHECK(a[0].guess_prob == doctest::Approx(b[0].guess_prob).epsilon(1e-5));
  CHECK(b[0].guess_prob == doctest::Approx(c[0].guess_prob).epsilon(1e-5));
}

TEST_CASE("relaxation bound dominates explicit Hardy strategies") {
  const double s = 0.5436;
  for (double delta : {0.004, 0.012, 0.0179}) {
    const double r = r_for_delta(delta, s);
    const Behavior q = hardy_behavior(HardyParams(r, s, s));
    const auto pt = npa::randomness_curve({delta}, npa::Level::Local1, Settings{1, 1, 1}, 1);
    REQUIRE(pt[0].status == sdp::Status::Optimal);
    CHECK(pt[0].guess_prob >= randomness::guessing_probability(q, {1, 1, 1}) - 1e-6);
  }
}

TEST_CASE("moment problem export and delta bounds") {
  const auto p = npa::hardy_moment_problem(0.01, {{0, 0, 0}, {1, 1, 1}}, npa::Level::Level1);
  const std::string js = npa::problem_to_json(p);
  CHECK(js.find("hardy-moment-problem/1") != std::string::npos);
  CHECK_THROWS_AS(npa::hardy_moment_problem(0.5, {{0, 0, 0}, {1, 1, 1}}, npa::Level::Level1), DomainError);
  CHECK_THROWS_AS(npa::randomness_curve({0.0}, npa::Level::Level1, Settings{1, 1, 1}, 1), DomainError);
}

TEST_CASE("curve at settings (0,0,0) starts near zero and stays under the reference") {
  const auto c = npa::randomness_curve({1e-4, 0.0181}, npa::Level::Local1, Settings{0, 0, 0}, 1);
  CHECK(c[0].bits < 1e-3);
  CHECK(c[1].bits > c[0].bits);
  CHECK(c[1].bits <= 0.2387 + 0.02);
}
