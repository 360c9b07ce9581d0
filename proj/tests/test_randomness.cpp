#include <doctest.h>

#include <cmath>

#include "hardy/randomness.hpp"

using namespace hardy;

TEST_CASE("guessing probability of simple behaviors") {
  CHECK(randomness::guessing_probability(uniform_behavior(), {1, 0, 1}) == 0.125);
  CHECK(randomness::global_guessing_probability(uniform_behavior()) == 0.125);
  std::array<std::array<Outcome, 2>, 3> out{};
  CHECK(randomness::guessing_probability(deterministic_behavior(out), {0, 1, 0}) == 1.0);
}

TEST_CASE("uniform row at (7/8, 4/7, 4/7)") {
  const HardyParams p(7.0 / 8.0, 4.0 / 7.0, 4.0 / 7.0);
  const auto row = hardy_behavior(p).row({1, 1, 1});
  for (int k = 0; k < 7; ++k) CHECK(std::abs(row[static_cast<std::size_t>(k)] - 1.0 / 7.0) <= 1e-14);
  CHECK(row[7] == 0.0);
  const auto rep = randomness::certified_bits(p, {1, 1, 1}, true);
  CHECK(rep.bits == doctest::Approx(std::log2(7.0)).epsilon(1e-12));
  CHECK(rep.certified);
  CHECK(randomness::uniform_row_r(4.0 / 7.0) == doctest::Approx(0.875));
}

TEST_CASE("row uniformity analysis") {
  const auto u = randomness::row_uniformity_analysis();
  CHECK(u.r_at_four_sevenths == doctest::Approx(0.875));
  CHECK(u.row111_max_deviation < 1e-14);
  CHECK(u.row111_last_cell_zero);
  CHECK(u.row000_best_deviation >= 0.0);
}

TEST_CASE("iso-Hardy slices shrink toward the maximum") {
  cover::CoverOptions opt;
  opt.extra_points = cover::named_points();
  opt.threads = 1;
  const auto res = cover::self_test_region(GridSpec::cube(16), opt);
  const auto low = randomness::iso_hardy_slice(0.01, res, 1e-3, false);
  const auto high = randomness::iso_hardy_slice(0.0181, res, 1e-3, false);
  CHECK_FALSE(low.members.empty());
  CHECK(high.diameter() < low.diameter());
  const auto reg = randomness::randomness_region(1.0 / 56.0, res, {1, 1, 1}, 1e-9);
  REQUIRE_FALSE(reg.empty);
  CHECK(reg.max_bits == doctest::Approx(std::log2(7.0)));
  CHECK_THROWS_AS(randomness::iso_hardy_slice(0.0, res), DomainError);
  CHECK_THROWS_AS(randomness::iso_hardy_slice(0.02, res), DomainError);
}
