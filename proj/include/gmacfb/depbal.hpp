#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gmacfb/gaussian.hpp"
#include "gmacfb/types.hpp"

namespace gmacfb {

/// Penalized objective of the singleton-partition dual, evaluated exactly as
/// printed: the per-user term divides by the power limit P_j,
///
///   h(lambda, K) = (lambda-1)/2 ln(1 + sum_jk K_jk)
///     - lambda/(2(J-1)) sum_j ln(1 + sum_lk K_lk - (sum_k K_jk)^2 / P_j),
///
/// in nats. The exact Gaussian counterpart divides by Q_j instead; the two
/// coincide when Q_j = P_j (see s_lambda_gaussian). Throws std::domain_error
/// if a log argument is nonpositive, which requires Q_j > P_j.
double h_value(double lambda, const CovarianceMatrix& k,
               const std::vector<double>& powers);

/// Exact Gaussian penalized objective for an arbitrary partition:
///   (lambda-1) I(X;Y) - lambda/(M-1) sum_m I(X_{S_m^C}; Y | X_{S_m}),
/// in nats, with conditional terms from exact conditional variances (Q_j).
/// Equals h_value for the singleton partition whenever Q_j = P_j.
double s_lambda_gaussian(double lambda, const CovarianceMatrix& k,
                         const Partition& partition);

struct FeasibilityResult {
  bool feasible = false;
  /// (1/(M-1)) sum_m I(X_{S_m^C};Y|X_{S_m}) - I(X;Y), nats; >= 0 iff feasible.
  double slack = 0.0;
};

/// Dependence-balance constraint for `partition`.
FeasibilityResult depbal_feasible(const CovarianceMatrix& k,
                                  const Partition& partition);

struct InnerMinOptions {
  int starts = 8;
  int barrier_rounds = 3;
  double barrier_weight = 1e-6;   // decreased x0.1 per round
  std::uint64_t seed = 42;
  int max_evaluations_per_round = 0;  // 0 = scale with dimension
  std::optional<Eigen::VectorXd> warm_start;
};

struct InnerMinResult {
  CovarianceMatrix k;
  double value = 0.0;        // penalized objective at the minimizer, barrier-free
  Eigen::VectorXd rho;       // upper-triangular correlations of the minimizer
  InnerMinResult(CovarianceMatrix k_, double value_, Eigen::VectorXd rho_)
      : k(std::move(k_)), value(value_), rho(std::move(rho_)) {}
};

/// Minimize the penalized objective over correlation vectors with the
/// diagonal pinned at Q_j = P_j (pinning never increases the minimum).
/// Multi-start Nelder-Mead with a logarithmic PSD barrier.
InnerMinResult inner_min(double lambda, const std::vector<double>& powers,
                         const Partition& partition,
                         const InnerMinOptions& options = {});

struct DualBoundResult {
  RateValue bound;
  double lambda_opt = 0.0;
  CovarianceMatrix k_opt;
  double inner_value = 0.0;
  Partition partition;
  /// Set when the sampled dual values fail unimodality beyond tolerance
  /// (the inner minimization is exact only up to local search).
  bool concavity_warning = false;
  DualBoundResult(RateValue bound_, double lambda_opt_, CovarianceMatrix k_opt_,
                  double inner_value_, Partition partition_, bool warning)
      : bound(bound_), lambda_opt(lambda_opt_), k_opt(std::move(k_opt_)),
        inner_value(inner_value_), partition(std::move(partition_)),
        concavity_warning(warning) {}
};

struct DualBoundOptions {
  std::uint64_t seed = 42;
  double lambda_tol = 1e-8;
  Unit unit = Unit::nats;
};

/// Upper bound -max_{lambda >= 0} min_K (penalized objective): the dual
/// g(lambda) is concave (a pointwise min of functions affine in lambda), so a
/// geometric bracket expansion from [0, 1] followed by golden-section search
/// locates the maximum.
DualBoundResult dual_bound(const std::vector<double>& powers,
                           const Partition& partition,
                           const DualBoundOptions& options = {});

}  // namespace gmacfb
