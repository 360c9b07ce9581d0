#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "hardy/jacobi.hpp"
#include "hardy/parallel.hpp"
#include "hardy/simplex.hpp"

using namespace hardy;

TEST_CASE("jacobi on diagonal and known spectra") {
  linalg::Mat3 d{{{-1, 0, 0}, {0, -2, 0}, {0, 0, -3}}};
  const auto e = linalg::jacobi_eigen(d);
  CHECK(e.values[0] == -3.0);
  CHECK(e.values[1] == -2.0);
  CHECK(e.values[2] == -1.0);

  linalg::Mat3 a{{{2, 1, 0}, {1, 2, 0}, {0, 0, 3}}};
  const auto f = linalg::jacobi_eigen(a);
  CHECK(f.values[0] == doctest::Approx(1.0));
  CHECK(f.values[1] == doctest::Approx(3.0));
  CHECK(f.values[2] == doctest::Approx(3.0));
}

TEST_CASE("jacobi agrees with a reference eigensolver") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    linalg::Mat3 a{};
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const double v = n(rng);
        a[i][j] = a[j][i] = v;
        m(i, j) = m(j, i) = v;
      }
    const auto e = linalg::jacobi_eigen(a);
    const Eigen::Vector3d ref = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues();
    for (int k = 0; k < 3; ++k) CHECK(e.values[k] == doctest::Approx(ref(k)).epsilon(1e-12));
    const auto back = linalg::reconstruct(e);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(back[i][j] == doctest::Approx(a[i][j]).epsilon(1e-12));
  }
}

TEST_CASE("simplex on small problems") {
  // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6  ->  (8/5, 6/5), value 14/5
  lp::Problem p(2, 4);
  p.at(0, 0) = 1, p.at(0, 1) = 2, p.at(0, 2) = 1;
  p.at(1, 0) = 3, p.at(1, 1) = 1, p.at(1, 3) = 1;
  p.b = {4, 6};
  p.c = {1, 1, 0, 0};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.objective == doctest::Approx(2.8));
  CHECK(s.x[0] == doctest::Approx(1.6));
  CHECK(s.x[1] == doctest::Approx(1.2));

  lp::Problem bad(1, 1);
  bad.at(0, 0) = 1;
  bad.b = {-1};
  CHECK(lp::solve(bad).status == lp::Status::Infeasible);

  lp::Problem open(1, 2);
  open.at(0, 0) = 1, open.at(0, 1) = -1;
  open.b = {0};
  open.c = {1, 0};
  CHECK(lp::solve(open).status == lp::Status::Unbounded);
}

TEST_CASE("parallel_for is independent of thread count") {
  std::vector<double> a(1000), b(1000);
  parallel_for(a.size(), 1, [&](std::size_t i) { a[i] = static_cast<double>(i) * 0.5; });
  parallel_for(b.size(), 4, [&](std::size_t i) { b[i] = static_cast<double>(i) * 0.5; });
  CHECK(a == b);
  CHECK_THROWS(parallel_for(10, 2, [](std::size_t i) {
    if (i == 7) throw std::runtime_error("x");
  }));
}
