#include <doctest.h>

#include <cmath>

#include "hardy/sdp.hpp"

using namespace hardy;

TEST_CASE("maximize the off-diagonal of a unit-diagonal 2x2 PSD matrix") {
  sdp::LmiProblem p;
  p.blocks = {{2, false}};
  p.f0 = {Eigen::Matrix2d::Identity()};
  Eigen::MatrixXd f1(2, 2);
  f1 << 0, 1, 1, 0;
  p.f = {{f1}};
  p.b = Eigen::VectorXd::Ones(1);
  const auto s = sdp::solve(p);
  REQUIRE(s.status == sdp::Status::Optimal);
  CHECK(s.primal_objective == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.y(0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("diagonal blocks act as linear constraints") {
  // max y1 + y2 s.t. 1 - y1 >= 0, 2 - y2 >= 0, y1 + y2 <= 2.5
  sdp::LmiProblem p;
  p.blocks = {{3, true}};
  Eigen::VectorXd f0(3), a(3), b(3);
  f0 << 1, 2, 2.5;
  a << -1, 0, -1;
  b << 0, -1, -1;
  p.f0 = {f0};
  p.f = {{a}, {b}};
  p.b = Eigen::VectorXd::Ones(2);
  const auto s = sdp::solve(p);
  REQUIRE(s.status == sdp::Status::Optimal);
  CHECK(s.primal_objective == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("infeasible LMI is detected") {
  // -1 + 0*y >= 0 has no solution.
  sdp::LmiProblem p;
  p.blocks = {{1, false}};
  p.f0 = {Eigen::MatrixXd::Constant(1, 1, -1.0)};
  p.f = {{Eigen::MatrixXd::Zero(1, 1)}};
  p.b = Eigen::VectorXd::Ones(1);
  CHECK(sdp::solve(p).status != sdp::Status::Optimal);
}

TEST_CASE("solves are deterministic") {
  sdp::LmiProblem p;
  p.blocks = {{3, false}};
  p.f0 = {Eigen::Matrix3d::Identity()};
  Eigen::MatrixXd f1 = Eigen::MatrixXd::Zero(3, 3), f2 = Eigen::MatrixXd::Zero(3, 3);
  f1(0, 1) = f1(1, 0) = 1;
  f2(1, 2) = f2(2, 1) = 1;
  p.f = {{f1}, {f2}};
  p.b = Eigen::Vector2d(1.0, 2.0);
  const auto a = sdp::solve(p);
  const auto b = sdp::solve(p);
  CHECK(a.primal_objective == b.primal_objective);
  CHECK(a.y == b.y);
  CHECK(a.primal_objective == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));
}
