#include <doctest.h>

#include <cmath>
#include <vector>

#include "hardy/cover.hpp"

using namespace hardy;

namespace {

// Upper concave envelope of 1-D samples by exhaustive pairs.
double envelope_1d(double q, const std::vector<double>& x, const std::vector<double>& v) {
  double best = -1e300;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[i] > q || x[j] < q) continue;
      const double w = x[j] == x[i] ? 1.0 : (x[j] - q) / (x[j] - x[i]);
      best = std::max(best, w * v[i] + (1 - w) * v[j]);
    }
  return best;
}

}  // namespace

TEST_CASE("upper hull LP equals the brute-force 1-D envelope") {
  std::vector<double> x, v;
  for (int i = 0; i <= 40; ++i) {
    x.push_back(i / 40.0);
    v.push_back(std::sin(9.0 * x.back()) + 0.3 * x.back());
  }
  for (double q = 0.0; q <= 1.0; q += 0.0137) {
    const auto h = cover::upper_hull_lp(std::span<const double>(&q, 1), 1, x, v);
    REQUIRE(h.feasible);
    CHECK(h.value == doctest::Approx(envelope_1d(q, x, v)).epsilon(1e-10));
  }
  const double outside = 1.5;
  CHECK_FALSE(cover::upper_hull_lp(std::span<const double>(&outside, 1), 1, x, v).feasible);
}

TEST_CASE("concave data is its own cover") {
  std::vector<double> x, v;
  for (int i = 0; i <= 20; ++i) {
    x.push_back(i / 20.0);
    v.push_back(x.back() * (1 - x.back()));
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto h = cover::upper_hull_lp(std::span<const double>(&x[k], 1), 1, x, v);
    CHECK(h.value == doctest::Approx(v[k]).epsilon(1e-12));
  }
}

TEST_CASE("small-grid region contains both named points") {
  cover::CoverOptions opt;
  opt.extra_points = cover::named_points();
  opt.threads = 1;
  const auto res = cover::self_test_region(GridSpec::cube(12), opt);
  REQUIRE(res.size() == 12 * 12 * 12 + 2);
  for (const auto& c : res) {
    CHECK(c.gap >= -1e-9);
    CHECK(c.in_region == (c.on_cover && c.omega > 0.0));
  }
  CHECK(res[res.size() - 2].in_region);
  CHECK(res[res.size() - 1].in_region);
  const auto sum = cover::summarize(res);
  CHECK(sum.positive > sum.in_region);
  CHECK(sum.intersection <= sum.in_region);
  CHECK(cover::to_csv(res).rfind("r,s,t,omega,cover,gap,in_region\n", 0) == 0);
}
