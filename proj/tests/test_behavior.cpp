#include <doctest.h>

#include <random>

#include "hardy/behavior.hpp"
#include "hardy/io.hpp"

using namespace hardy;

TEST_CASE("hardy probability at exact rational points") {
  // 1/4 * 1/2 * 1/4 * (1/8) / (3/4)^2 = 1/144
  CHECK(hardy_probability(HardyParams(0.5, 0.5, 0.5)) == doctest::Approx(1.0 / 144.0).epsilon(1e-15));
  CHECK(hardy_probability(HardyParams(7.0 / 8.0, 4.0 / 7.0, 4.0 / 7.0)) == doctest::Approx(1.0 / 56.0).epsilon(1e-14));
  CHECK(omega(0.5, 0.5, 0.5) == doctest::Approx(1.0 / 144.0));
}

TEST_CASE("domain of the parameters") {
  CHECK(HardyParams::in_domain(0.5, 0.5, 0.5));
  CHECK_FALSE(HardyParams::in_domain(0.0, 0.5, 0.5));
  CHECK_FALSE(HardyParams::in_domain(0.5, 0.9, 0.9));  // h < 0
  CHECK_THROWS_AS(HardyParams(1.0, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(HardyParams(0.5, 0.5, 0.0), DomainError);
}

TEST_CASE("closed form passes every consistency check on random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  while (tested < 200) {
    const double r = u(rng), s = u(rng), t = u(rng) * (1 - s) / (1 - r * s);
    if (!HardyParams::in_domain(r, s, t)) continue;
    const Behavior b = hardy_behavior(HardyParams(r, s, t));
    const auto rep = check_hardy_constraints(b);
    CHECK(rep.all_pass());
    CHECK(rep.p_hardy == doctest::Approx(omega(r, s, t)).epsilon(1e-12));
    CHECK(check_no_signalling(b).pass);
    CHECK(normalization_error(b) <= 1e-12);
    for (double v : b.table()) CHECK(v >= 0.0);
    ++tested;
  }
}

TEST_CASE("storage order and marginals") {
  CHECK(Behavior::index(0, 0, 0, 0, 0, 0) == 0);
  CHECK(Behavior::index(0, 0, 0, 1, 1, 1) == 7);
  CHECK(Behavior::index(1, 1, 1, 1, 1, 1) == 63);
  const Behavior u = uniform_behavior();
  CHECK(u.p_ab(0, 1, 1, 0) == doctest::Approx(0.25));
  CHECK(u.marginal(1, {0, 0, 0}, {1, 0, 1}) == doctest::Approx(0.5));
  const auto row = u.row({1, 0, 1});
  for (double v : row) CHECK(v == 0.125);
}

TEST_CASE("validation rejects bad tables") {
  Behavior::Table t{};
  t.fill(0.125);
  CHECK_NOTHROW(Behavior{t});
  t[3] = 0.2;
  CHECK_THROWS_AS(Behavior{t}, DomainError);
  t[3] = -0.1;
  CHECK_THROWS_AS(Behavior{t}, DomainError);
}

TEST_CASE("deterministic behaviors are local and signal-free") {
  std::array<std::array<Outcome, 2>, 3> out{};
  out[0] = {Outcome::Plus, Outcome::Minus};
  out[1] = {Outcome::Minus, Outcome::Minus};
  out[2] = {Outcome::Plus, Outcome::Plus};
  const Behavior d = deterministic_behavior(out);
  CHECK(d(1, 0, 1, 1, 1, 0) == 1.0);
  CHECK(d(1, 0, 1, 0, 1, 0) == 0.0);
  CHECK(check_no_signalling(d).pass);
}

TEST_CASE("settings parsing") {
  CHECK(parse_settings("1,0,1") == Settings{1, 0, 1});
  CHECK(to_string(Settings{0, 1, 1}) == "0,1,1");
  CHECK_THROWS_AS(parse_settings("1,2,0"), DomainError);
  CHECK_THROWS_AS(parse_settings("1,1"), DomainError);
}

TEST_CASE("csv and json round trip is exact") {
  const Behavior b = hardy_behavior(HardyParams(0.31, 0.47, 0.29));
  CHECK(io::behavior_from_csv(io::behavior_to_csv(b)) == b);
  CHECK(io::behavior_from_json(io::behavior_to_json(b)) == b);
  CHECK(io::fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(io::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}
