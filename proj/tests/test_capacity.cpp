#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gmacfb/capacity.hpp"
#include "gmacfb/cutset.hpp"

using namespace gmacfb;

namespace {

// Test-only oracle for J=2: the capacity is the crossing of the two cut
// curves, located by bisection on f1 - f2 over [0, 1].
double two_user_crossing_rho(double power) {
  auto diff = [&](double rho) {
    const TwoUserCuts c = two_user_cuts(power, rho);
    return c.f1 - c.f2;
  };
  double lo = 0.0, hi = 1.0;
  REQUIRE(diff(lo) < 0.0);
  REQUIRE(diff(hi) > 0.0);
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (diff(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("ell closed form") {
  CHECK(ell(3.0, 3, 1.0) == doctest::Approx(0.5 * std::log(10.0)).epsilon(1e-15));
  CHECK(ell(2.0, 2, 0.5) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-15));
  CHECK(ell(1.0, 3, 1.0) ==
        doctest::Approx(0.5 * std::log(4.0) - 0.75 * std::log(3.0)).epsilon(1e-13));
  CHECK(ell(1.0, 3, 1.0) == doctest::Approx(-0.13081).epsilon(1e-4));

  CHECK_THROWS_AS(ell(-0.1, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ell(3.1, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ell(1.0, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ell(1.0, 3, 0.0), std::invalid_argument);
}

TEST_CASE("solve_beta on the two-user channel matches the curve crossing") {
  const CapacitySolution sol = solve_beta(2, 1.0);
  CHECK(sol.beta_star > 1.30);
  CHECK(sol.beta_star < 1.32);
  CHECK(sol.residual <= 1e-12);

  const double rho_star = two_user_crossing_rho(1.0);
  CHECK(sol.beta_star == doctest::Approx(1.0 + rho_star).epsilon(1e-10));
  CHECK(as_nats(sol.capacity) == doctest::Approx(0.6436).epsilon(1e-3));
  CHECK(as_nats(sum_capacity(2, 1.0, Unit::bits)) ==
        doctest::Approx(as_nats(sol.capacity)).epsilon(1e-15));
  CHECK(sum_capacity(2, 1.0, Unit::bits).value == doctest::Approx(0.9285).epsilon(1e-3));
}

TEST_CASE("solve_beta three users at P = 0.3") {
  const CapacitySolution sol = solve_beta(3, 0.3);
  const double rho_star = (sol.beta_star - 1.0) / 2.0;
  CHECK(rho_star > 0.12);
  CHECK(rho_star < 0.14);
  CHECK(as_nats(sol.capacity) == doctest::Approx(0.379).epsilon(2e-3));
  CHECK(sol.lambda_star > 0.0);
}

TEST_CASE("solver contract over a parameter grid") {
  for (int users = 2; users <= 10; ++users) {
    for (double power : {0.01, 0.1, 0.3, 1.0, 3.0, 10.0}) {
      const CapacitySolution sol = solve_beta(users, power);
      CHECK(sol.residual <= 1e-12);
      CHECK(sol.beta_star >= 1.0);
      CHECK(sol.beta_star <= static_cast<double>(users));

      // the root equation in its power form, relative residual
      const double lhs = std::pow(1.0 + users * power * sol.beta_star, users - 1);
      const double rhs = std::pow(
          1.0 + power * sol.beta_star * (users - sol.beta_star), users);
      CHECK(std::abs(lhs - rhs) / lhs < 1e-9);

      // no-feedback sum rate below, full cooperation above
      const double c = as_nats(sol.capacity);
      CHECK(c >= 0.5 * std::log1p(users * power) - 1e-12);
      CHECK(c <= 0.5 * std::log1p(double(users) * users * power) + 1e-12);
    }
  }
}

TEST_CASE("capacity is strictly increasing in power") {
  for (int users : {2, 3, 5}) {
    double previous = 0.0;
    for (double power : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double c = as_nats(sum_capacity(users, power));
      CHECK(c > previous);
      previous = c;
    }
  }
}

TEST_CASE("two-user capacity equals the max-min cut bound") {
  for (double power : {0.1, 1.0, 10.0}) {
    const double capacity = as_nats(sum_capacity(2, power));
    const double rho_star = two_user_crossing_rho(power);
    const double crossing = two_user_cuts(power, rho_star).f1;
    CHECK(std::abs(capacity - crossing) < 1e-9);
  }
}

TEST_CASE("lambda_star closed form") {
  // J - 2 beta = 0 kills the correction term
  CHECK(lambda_star(4, 1.7, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambda_star(2, 0.9, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  const CapacitySolution s3 = solve_beta(3, 0.3);
  CHECK(lambda_star(3, 0.3, s3.beta_star) > 0.0);
  CHECK(s3.lambda_star == doctest::Approx(lambda_star(3, 0.3, s3.beta_star)));
  const CapacitySolution s2 = solve_beta(2, 1.0);
  CHECK(s2.lambda_star > 0.0);

  // the expression has a pole at beta = 1/sqrt(3) when J = 2, P = 1
  CHECK_THROWS_AS(lambda_star(2, 1.0, 1.0 / std::sqrt(3.0)), std::domain_error);
}

TEST_CASE("dual objective") {
  CHECK(dual_objective(0.0, 1.7, 3, 0.8) ==
        doctest::Approx(-0.5 * std::log1p(3 * 0.8 * 1.7)).epsilon(1e-15));

  const CapacitySolution sol = solve_beta(3, 0.3);
  CHECK(dual_objective(sol.lambda_star, sol.beta_star, 3, 0.3) ==
        doctest::Approx(-as_nats(sol.capacity)).epsilon(1e-11));

  CHECK(dual_objective(1.0, 1.0, 3, 1.0) ==
        doctest::Approx(-0.82396).epsilon(1e-4));
}
