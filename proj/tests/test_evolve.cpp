#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include <fronts/evolve.hpp>

using namespace fronts;

TEST_CASE("logistic front settles near the known spreading speed") {
  auto ev = evolve(make_fisher(), InitialCondition::step, 240.0, 0.1, 80.0);
  const double c = spreading_speed(ev);
  REQUIRE(c == Catch::Approx(2.0).epsilon(0.05));
}

TEST_CASE("compactly supported data select the same speed") {
  auto ev =
      evolve(make_fisher(), InitialCondition::compact_bump, 240.0, 0.1, 80.0);
  REQUIRE(spreading_speed(ev) == Catch::Approx(2.0).epsilon(0.05));
}

TEST_CASE("solution stays within the invariant interval") {
  auto ev = evolve(make_bistable_cubic(0.3), InitialCondition::step, 120.0,
                   0.1, 40.0);
  for (double u : ev.u_final) {
    REQUIRE(u >= -1e-6);
    REQUIRE(u <= 1.0 + 1e-6);
  }
}

TEST_CASE("the tracked level set advances monotonically once formed") {
  auto ev = evolve(make_fisher(), InitialCondition::step, 160.0, 0.1, 40.0);
  REQUIRE(ev.track_t.size() == ev.track_x_level.size());
  // Skip the initial transient.
  for (std::size_t i = 11; i < ev.track_x_level.size(); ++i)
    REQUIRE(ev.track_x_level[i] > ev.track_x_level[i - 1]);
}

TEST_CASE("runs that would hit the far boundary are rejected") {
  REQUIRE_THROWS_AS(
      evolve(make_fisher(), InitialCondition::step, 60.0, 0.1, 60.0),
      NumericalFailure);
}

TEST_CASE("domain and resolution preconditions are enforced") {
  REQUIRE_THROWS_AS(
      evolve(make_fisher(), InitialCondition::step, 30.0, 0.1, 10.0),
      InvalidArgument);
}

TEST_CASE("track serialization uses the t,x_level header") {
  auto ev = evolve(make_fisher(), InitialCondition::step, 120.0, 0.2, 5.0);
  std::ostringstream os;
  write_track_csv(ev, os);
  const std::string text = os.str();
  REQUIRE(text.rfind("t,x_level\n", 0) == 0);
  REQUIRE(std::count(text.begin(), text.end(), '\n') ==
          static_cast<long>(ev.track_t.size()) + 1);
}

TEST_CASE("speed measurement needs a populated window") {
  EvolveResult empty;
  REQUIRE_THROWS_AS(spreading_speed(empty), InvalidArgument);
}
