#include <doctest.h>

#include <cmath>

#include "hardy/ontic.hpp"

using namespace hardy;

TEST_CASE("bipartite no-signalling polytope has 16 local and 8 PR vertices") {
  const auto v = ontic::enumerate_bipartite_vertices();
  REQUIRE(v.size() == 24);
  int pr = 0;
  for (const auto& x : v) {
    CHECK(x.box.is_no_signalling(1e-12));
    if (x.tag == ontic::BoxTag::PR) {
      ++pr;
      CHECK(x.box.max_chsh() == doctest::Approx(4.0));
      for (double p : x.box.p) CHECK((p == 0.0 || std::abs(p - 0.5) < 1e-12));
    } else {
      CHECK(x.box.max_chsh() <= 2.0 + 1e-12);
    }
  }
  CHECK(pr == 8);
}

TEST_CASE("convex hull membership") {
  const auto v = ontic::enumerate_bipartite_vertices();
  ontic::BipartiteBox mid;
  for (std::size_t i = 0; i < 16; ++i) mid.p[i] = 0.5 * v[0].box.p[i] + 0.5 * v[20].box.p[i];
  CHECK(ontic::in_convex_hull(mid, {v[0].box, v[20].box}));
  CHECK_FALSE(ontic::in_convex_hull(v[20].box, {v[0].box, v[1].box}));
}

TEST_CASE("strategy sets") {
  CHECK(ontic::fully_local_strategies().size() == 64);
  const auto ns = ontic::enumerate_nsbl();
  CHECK(ns.size() == 288);
  CHECK(ns.labels.size() == 288);
  for (const auto& b : ns.behaviors) CHECK(check_no_signalling(b, 1e-12).pass);
}

TEST_CASE("Hardy LP over local and bilocal models") {
  const auto fl = ontic::max_hardy_over_model(ontic::enumerate_fully_local());
  CHECK(std::abs(fl.value) <= 1e-9);
  const auto ns = ontic::max_hardy_over_model(ontic::enumerate_nsbl());
  CHECK(std::abs(ns.value) <= 1e-9);
  const auto relaxed = ontic::max_hardy_over_model(ontic::enumerate_nsbl(), {false});
  CHECK(relaxed.value > 1e-3);
  double total = 0.0;
  for (double w : relaxed.weights) total += w;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("predictability failure of the quantum behavior") {
  const Behavior q = hardy_behavior(HardyParams(0.8392, 0.5436, 0.5436));
  const auto rep = ontic::check_predictability_failure(q);
  CHECK_FALSE(rep.expressible);
  CHECK(rep.observed_p_hardy > rep.model_max);
  CHECK_THROWS_AS(ontic::check_predictability_failure(uniform_behavior()), DomainError);
}
