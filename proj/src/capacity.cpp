#include "gmacfb/capacity.hpp"

#include <cmath>
#include <stdexcept>

namespace gmacfb {

namespace {

void require_channel(int users, double power) {
  if (users < 2) throw std::invalid_argument("need at least two users");
  if (!(power > 0.0) || !std::isfinite(power))
    throw std::invalid_argument("power must be positive");
}

}  // namespace

double ell(double beta, int users, double power) {
  require_channel(users, power);
  if (beta < 0.0 || beta > static_cast<double>(users))
    throw std::invalid_argument("ell: beta must lie in [0, J]");
  const double j = static_cast<double>(users);
  return 0.5 * std::log1p(j * power * beta) -
         j / (2.0 * (j - 1.0)) * std::log1p(power * beta * (j - beta));
}

CapacitySolution solve_beta(int users, double power, double tol) {
  require_channel(users, power);
  if (!(tol > 0.0)) throw std::invalid_argument("solve_beta: tol must be positive");

  double lo = 1.0, hi = static_cast<double>(users);
  double f_lo = ell(lo, users, power);
  double f_hi = ell(hi, users, power);
  if (!(f_lo < 0.0) || !(f_hi > 0.0))
    throw std::logic_error("solve_beta: bracket invariant violated");

  double mid = 0.5 * (lo + hi);
  double f_mid = ell(mid, users, power);
  int iterations = 1;
  while ((hi - lo > tol || std::abs(f_mid) > tol) && iterations < 200) {
    if (f_mid > 0.0)
      hi = mid;
    else
      lo = mid;
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) break;  // bracket at floating-point limit
    mid = next;
    f_mid = ell(mid, users, power);
    ++iterations;
  }
  if (std::abs(f_mid) > tol && hi - lo > tol)
    throw std::logic_error("solve_beta: bisection failed to converge");

  CapacitySolution out;
  out.beta_star = mid;
  out.capacity = RateValue{0.5 * std::log1p(users * power * mid), Unit::nats};
  out.lambda_star = lambda_star(users, power, mid);
  out.residual = std::abs(f_mid);
  out.iterations = iterations;
  return out;
}

RateValue sum_capacity(int users, double power, Unit unit) {
  return convert_rate(solve_beta(users, power).capacity, unit);
}

double lambda_star(int users, double power, double beta) {
  require_channel(users, power);
  const double j = static_cast<double>(users);
  const double denom = 1.0 - (j - 2.0 * beta) * (1.0 + j * power * beta) /
                                 ((j - 1.0) * (1.0 + power * beta * (j - beta)));
  if (std::abs(denom) < 1e-14)
    throw std::domain_error("lambda_star: expression is singular at this beta");
  return 1.0 / denom;
}

double dual_objective(double lambda, double beta, int users, double power) {
  return -0.5 * std::log1p(users * power * beta) +
         lambda * ell(beta, users, power);
}

}  // namespace gmacfb
