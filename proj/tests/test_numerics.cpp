#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <fronts/interp.hpp>
#include <fronts/ode.hpp>
#include <fronts/quadrature.hpp>
#include <fronts/roots.hpp>

using namespace fronts;

TEST_CASE("tanh-sinh integrates smooth functions to tight tolerance") {
  auto r = integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  REQUIRE(r.converged);
  REQUIRE(r.value == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("tanh-sinh handles inverse-square-root endpoint singularities") {
  auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  REQUIRE(r.converged);
  REQUIRE(r.value == Catch::Approx(2.0).epsilon(1e-10));

  auto r2 = integrate(
      [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0);
  REQUIRE(r2.converged);
  REQUIRE(r2.value == Catch::Approx(M_PI).epsilon(1e-8));
}

TEST_CASE("tanh-sinh rejects out-of-range tolerances and empty intervals") {
  REQUIRE_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0),
                    InvalidArgument);
  REQUIRE_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, 1e-20),
                    InvalidArgument);
}

TEST_CASE("exponent-aware quadrature reaches strongly singular powers") {
  // int_0^1 u^-b (1-u)^b du = pi*b / sin(pi*b); plain node placement loses
  // the endpoint mass once b approaches 1.
  for (double b : {0.5, 0.9, 0.95}) {
    auto r = integrate_unit_powers(
        [b](double u) { return std::pow((1.0 - u) / u, b); }, -b, b, 1e-10);
    REQUIRE(r.converged);
    const double exact = M_PI * b / std::sin(M_PI * b);
    REQUIRE(r.value == Catch::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("exponent-aware quadrature rejects divergent exponents") {
  REQUIRE_THROWS_AS(
      integrate_unit_powers([](double u) { return 1.0 / u; }, -1.0, 0.0),
      InvalidArgument);
}

TEST_CASE("semi-infinite quadrature integrates exponential decay") {
  auto r = integrate_semi_infinite([](double s) { return std::exp(-s); });
  REQUIRE(r.converged);
  REQUIRE(r.value == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gauss7 is exact on low-order polynomials") {
  const double cubic = gauss7([](double x) { return x * x * x; }, 0.0, 2.0);
  REQUIRE(cubic == Catch::Approx(4.0).epsilon(1e-13));
  const double quintic =
      gauss7([](double x) { return 6.0 * std::pow(x, 5); }, -1.0, 2.0);
  REQUIRE(quintic == Catch::Approx(std::pow(2.0, 6) - 1.0).epsilon(1e-12));
}

TEST_CASE("adaptive RK integrates linear decay to requested accuracy") {
  OdeOptions opts;
  opts.rel_tol = 1e-10;
  opts.abs_tol = 1e-14;
  auto res = ode_solve([](double, double y) { return -y; }, 0.0, 1.0, 5.0,
                       opts);
  REQUIRE(res.reached_end);
  REQUIRE(res.last.y == Catch::Approx(std::exp(-5.0)).epsilon(1e-8));
}

TEST_CASE("adaptive RK stop predicate halts integration early") {
  auto res = ode_solve([](double, double y) { return -y; }, 0.0, 1.0, 50.0,
                       {}, [](double, double y) { return y < 0.5; });
  REQUIRE_FALSE(res.reached_end);
  REQUIRE(res.stopped);
  REQUIRE(res.last.y <= 0.5 * 1.001);
  REQUIRE(res.last.x == Catch::Approx(std::log(2.0)).margin(1e-6));
}

TEST_CASE("adaptive RK integrates backward") {
  auto res = ode_solve([](double, double y) { return y; }, 2.0, std::exp(2.0),
                       0.0);
  REQUIRE(res.reached_end);
  REQUIRE(res.last.y == Catch::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("pchip interpolation is monotone and hits the knots") {
  std::vector<double> x{0.0, 0.2, 0.5, 0.7, 1.0};
  std::vector<double> y{0.0, 0.1, 0.6, 0.8, 1.0};
  Pchip p(x, y);
  for (std::size_t i = 0; i < x.size(); ++i)
    REQUIRE(p(x[i]) == Catch::Approx(y[i]).margin(1e-14));
  double prev = -1.0;
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const double v = p(t);
    REQUIRE(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("pchip requires strictly increasing abscissae") {
  REQUIRE_THROWS_AS(Pchip({0.0, 0.0, 1.0}, {0.0, 0.5, 1.0}), InvalidArgument);
}

TEST_CASE("bisection locates a simple root") {
  const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0,
                          1e-13);
  REQUIRE(r == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("golden-section search finds an interior maximum") {
  const double m = golden_section_max(
      [](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10);
  REQUIRE(m == Catch::Approx(0.3).margin(1e-8));
}
