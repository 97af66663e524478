#pragma once

#include <Eigen/Dense>
#include <functional>

namespace gmacfb {

/// Golden-section maximization of a unimodal f on [lo, hi] to width `xtol`.
/// Returns the argmax; the maximum value is written to *fmax when non-null.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double xtol, double* fmax = nullptr);

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
};

struct NelderMeadOptions {
  double initial_radius = 0.2;
  double ftol = 1e-13;
  double xtol = 1e-10;
  int max_evaluations = 2000;
};

/// Derivative-free simplex minimization. Infeasible points may be signalled
/// by returning +infinity from `f`; the starting point must be feasible.
NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& start, const NelderMeadOptions& options = {});

}  // namespace gmacfb
