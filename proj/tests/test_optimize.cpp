#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <fronts/optimize.hpp>
#include <fronts/oracle.hpp>

using namespace fronts;

TEST_CASE("integral-bound optimization runs to the family box edge") {
  // Over g = ((1-u)/u)^L the logistic-term bound is 2 sqrt(L): the
  // supremum 2 sits at L = 1, outside the searchable box, so the
  // optimizer must land on the upper box edge.
  auto f = make_fisher();
  auto fam = family_power_g(Principle::VP2);
  auto r = optimize_bound(f, fam, Principle::VP2, 120);
  REQUIRE(r.value ==
          Catch::Approx(2.0 * std::sqrt(fam.box[0].second)).epsilon(1e-6));
  REQUIRE(r.value < 2.0);
}

TEST_CASE("optimized bounds nearly close the bracket for a pushed front") {
  auto f = make_hadeler_rothe(4.0);
  auto gap = bound_gap(f, 200);
  const double c0 = std::sqrt(2.0) + std::sqrt(0.5);
  REQUIRE(gap.best_lower.has_value());
  REQUIRE(gap.best_upper.has_value());
  REQUIRE(gap.best_lower->value <= c0 + 1e-6);
  REQUIRE(gap.best_upper->value >= c0 - 1e-6);
  REQUIRE(gap.gap <= 1e-4);
}

TEST_CASE("optimization finds the attaining trial for a bistable term") {
  auto f = make_bistable_cubic(0.3);
  auto gap = bound_gap(f, 200);
  REQUIRE(gap.best_lower.has_value());
  REQUIRE(gap.best_lower->value ==
          Catch::Approx((1.0 - 0.6) / std::sqrt(2.0)).epsilon(1e-4));
  // No sup-form principle applies off the monostable class.
  REQUIRE_FALSE(gap.best_upper.has_value());
}

TEST_CASE("concurrent family optimization returns identical results") {
  auto f = make_hadeler_rothe(4.0);
  auto serial = bound_gap(f, 120, 1e-6, 1);
  auto parallel = bound_gap(f, 120, 1e-6, 4);
  REQUIRE(serial.best_lower->value == parallel.best_lower->value);
  REQUIRE(serial.best_upper->value == parallel.best_upper->value);
  REQUIRE(serial.best_lower->trial == parallel.best_lower->trial);
}

TEST_CASE("optimizer refuses starvation budgets") {
  auto f = make_fisher();
  REQUIRE_THROWS_AS(
      optimize_bound(f, family_power_g(Principle::VP2), Principle::VP2, 10),
      InvalidArgument);
}

TEST_CASE("upper-bound families refuse non-monostable terms") {
  auto f = make_bistable_cubic(0.3);
  REQUIRE_THROWS_AS(
      optimize_bound(f, family_power_alpha(), Principle::VP1, 100),
      FrontsError);
}
