#include <doctest.h>

#include "hardy/pipeline.hpp"

using namespace hardy;

TEST_CASE("config merge and validation") {
  pipeline::Config c;
  c.merge_json(R"({"cover_grid": 12, "deltas": [0.01, 0.015], "settings": "1,0,1", "level": "level1"})");
  CHECK(c.cover_grid == 12);
  CHECK(c.concavity_grid == 60);
  CHECK(c.deltas.size() == 2);
  CHECK(c.settings == Settings{1, 0, 1});
  CHECK(c.level == npa::Level::Level1);
  CHECK_NOTHROW(c.validate());

  pipeline::Config round;
  round.merge_json(c.to_json());
  CHECK(round.to_json() == c.to_json());

  CHECK_THROWS(c.merge_json(R"({"cover_gird": 3})"));
  c.deltas = {0.03};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.deltas = {0.01};
  c.concavity_grid = 1;
  CHECK_THROWS_AS(c.validate(), DomainError);
}
