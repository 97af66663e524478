#pragma once

#include "gmacfb/types.hpp"

namespace gmacfb {

/// Root of the symmetric sum-rate characterization together with the
/// Lagrange multiplier that certifies it.
struct CapacitySolution {
  double beta_star = 0.0;   // unique root of ell in [1, J]
  RateValue capacity;       // 1/2 ln(1 + J P beta_star)
  double lambda_star = 0.0; // closed-form multiplier, > 0 at the root
  double residual = 0.0;    // |ell(beta_star)|
  int iterations = 0;
};

/// ell(beta, J, P) = 1/2 ln(1+JP beta) - J/(2(J-1)) ln(1+P beta (J-beta)),
/// in nats. Requires J >= 2, P > 0, beta in [0, J].
double ell(double beta, int users, double power);

/// Bisection for the unique root of ell on [1, J]; the bracket is valid
/// because ell(1) < 0 and ell(J) > 0. Stops when both the bracket width and
/// |ell| are <= tol.
CapacitySolution solve_beta(int users, double power, double tol = 1e-12);

/// Sum capacity 1/2 ln(1 + J P beta_star), converted to `unit`.
RateValue sum_capacity(int users, double power, Unit unit = Unit::nats);

/// lambda*(J, P, beta) = (1 - (J-2b)(1+JPb) / ((J-1)(1+Pb(J-b))))^{-1}.
/// Throws if the expression in parentheses is within 1e-14 of zero.
double lambda_star(int users, double power, double beta);

/// -1/2 ln(1+JP beta) + lambda * ell(beta, J, P).
double dual_objective(double lambda, double beta, int users, double power);

}  // namespace gmacfb
