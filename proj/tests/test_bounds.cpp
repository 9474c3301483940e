#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <fronts/bounds.hpp>
#include <fronts/oracle.hpp>
#include <fronts/trial.hpp>

using namespace fronts;

TEST_CASE("integral lower bound reproduces exact beta-integral values") {
  auto f = make_fisher();
  REQUIRE(vp2_lower(f, g_one_minus_u_pow(1)).value ==
          Catch::Approx(16.0 / 15.0).epsilon(1e-6));
  REQUIRE(vp2_lower(f, g_one_minus_u_pow(2)).value ==
          Catch::Approx(96.0 * std::sqrt(2.0) / 105.0).epsilon(1e-6));
}

TEST_CASE("ratio-trial lower bound has a closed form for the logistic term") {
  auto f = make_fisher();
  for (double lam : {0.25, 0.5, 0.75, 0.9})
    REQUIRE(vp2_lower(f, g_power_ratio(lam)).value ==
            Catch::Approx(2.0 * std::sqrt(lam)).epsilon(1e-7));
}

TEST_CASE("sup-form upper bound reproduces exact values") {
  auto f = make_fisher();
  REQUIRE(vp1_upper(f, alpha_identity()).value ==
          Catch::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("phase-space lower bound reproduces exact values") {
  auto f = make_fisher();
  auto b = vp4_lower(f, g_one_minus_u_pow(1));
  REQUIRE(b.value == Catch::Approx(std::sqrt(0.5)).epsilon(1e-6));
  REQUIRE(b.value_squared == Catch::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("bounds bracket the oracle speed across the test matrix") {
  for (auto f : {make_fisher(), make_hadeler_rothe(3.0),
                 make_hadeler_rothe(4.0), make_hadeler_rothe(8.0)}) {
    const double c0 = minimal_speed(f, 1e-6).c;
    for (auto g : {g_one_minus_u_pow(1), g_one_minus_u_pow(2),
                   g_power_ratio(0.5), g_power_ratio(0.9)}) {
      REQUIRE(vp2_lower(f, g).value <= c0 + 2e-4);
      REQUIRE(vp4_lower(f, g).value <= c0 + 2e-4);
    }
    for (auto a : {alpha_identity(), alpha_power(1.0, 1.0),
                   alpha_power(0.7, 0.5)})
      REQUIRE(vp1_upper(f, a).value >= c0 - 2e-4);
  }
}

TEST_CASE("the optimal trial saturates the phase-space bound") {
  auto f = make_hadeler_rothe(4.0);
  auto sol = minimal_speed(f, 1e-6);
  auto b = vp4_lower(f, optimal_trial(sol));
  REQUIRE(b.value == Catch::Approx(sol.c).epsilon(5e-3));

  auto fb = make_bistable_cubic(0.3);
  auto solb = minimal_speed(fb, 1e-6);
  REQUIRE(vp4_lower(fb, optimal_trial(solb)).value ==
          Catch::Approx(solb.c).epsilon(5e-3));
}

TEST_CASE("the trajectory itself saturates the sup-form upper bound") {
  auto f = make_hadeler_rothe(4.0);
  auto sol = minimal_speed(f, 1e-6);
  REQUIRE(vp1_upper(f, alpha_from_solution(sol)).value ==
          Catch::Approx(sol.c).epsilon(5e-3));
}

TEST_CASE("the integral-form optimal trial saturates its own bound") {
  auto f = make_hadeler_rothe(4.0);
  auto sol = minimal_speed(f, 1e-6);
  REQUIRE(vp2_lower(f, optimal_trial_vp2(sol)).value ==
          Catch::Approx(sol.c).epsilon(1e-4));
}

TEST_CASE("role and admissibility are enforced") {
  auto f = make_fisher();
  REQUIRE_THROWS_AS(vp1_upper(f, g_one_minus_u_pow(1)), InvalidArgument);
  REQUIRE_THROWS_AS(vp2_lower(f, alpha_identity()), InvalidArgument);
  REQUIRE_THROWS_AS(vp2_lower(make_bistable_cubic(0.3), g_one_minus_u_pow(1)),
                    InvalidArgument);
}

TEST_CASE("strongly weighted trials are rejected as divergent") {
  // g with an endpoint exponent at -1 makes the normalizing integral
  // diverge; the parameter domain refuses it up front.
  REQUIRE_THROWS_AS(g_power_ratio(0.0), InvalidArgument);
  auto f = make_fisher();
  REQUIRE_THROWS_AS(vp2_lower(f, g_beta(1.0, 1.0)), FrontsError);
}

TEST_CASE("action and phase-space scalar forms are reciprocal") {
  // s = 1/g must sweep all of (0, inf), so the trial must blow up at 0.
  auto f = make_fisher();
  auto prof = s_profile_from_trial(g_power_ratio(1.0));
  const double v4 = vp4s_value(f, prof);
  const double act = vp5_action(f, prof);
  REQUIRE(v4 * act == Catch::Approx(1.0).epsilon(1e-12));
  REQUIRE(v4 == Catch::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("scalar phase-space form agrees with its u-space counterpart") {
  auto f = make_hadeler_rothe(4.0);
  for (double lam : {0.5, 1.0, 1.5}) {
    auto g = g_power_ratio(lam);
    const double lhs = vp4s_value(f, s_profile_from_trial(g));
    const double rhs = vp4_lower(f, g).value_squared;
    REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("dropping the factor of two halves the scalar form") {
  auto f = make_fisher();
  auto prof = s_profile_from_trial(g_power_ratio(1.0));
  const double corrected = vp4s_value(f, prof, true);
  const double printed = vp4s_value(f, prof, false);
  REQUIRE(printed == Catch::Approx(0.5 * corrected).epsilon(1e-12));
}

TEST_CASE("weighted integrals balance exactly at the minimal speed") {
  auto f = make_hadeler_rothe(4.0);
  auto sol = minimal_speed(f, 1e-6);
  auto prof = front_profile(sol);
  auto wi = weighted_integrals(f, prof, sol.c);
  REQUIRE_FALSE(wi.tail_flagged);
  REQUIRE(wi.potential / wi.kinetic == Catch::Approx(1.0).margin(1e-3));
  REQUIRE(vp3_functional(f, prof, sol.c) == Catch::Approx(0.0).margin(1e-3));
}
