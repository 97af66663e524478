#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gmacfb/types.hpp"

namespace gmacfb {

/// Symmetric positive-semidefinite input covariance. The diagonal entries are
/// the per-user input powers Q_j; off-diagonal entries are rho_jk sqrt(Q_j Q_k).
///
/// PSD is accepted down to a smallest eigenvalue of -1e-10 * trace, so exact
/// boundary cases (rho = -1/(J-1), rho = 1) construct cleanly.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  double operator()(int j, int k) const { return entries_(j, k); }

  /// Input power Q_j = K_jj.
  double q(int j) const { return entries_(j, j); }
  /// Correlation coefficient rho_jk (0 when either power vanishes).
  double correlation(int j, int k) const;
  double min_eigenvalue() const { return min_eigenvalue_; }

  /// True iff Q_j <= P_j + 1e-12 for every user of `config`.
  bool valid_for(const ChannelConfig& config) const;

  static CovarianceMatrix zero(int dim);

 private:
  Eigen::MatrixXd entries_;
  double min_eigenvalue_ = 0.0;
};

/// K_jj = P_j with a common correlation coefficient; requires
/// rho >= -1/(J-1) so the result is PSD.
CovarianceMatrix build_covariance(const std::vector<double>& powers, double rho);

/// K_jj = P_j, off-diagonals from `rho_upper` in row-major upper-triangular
/// order (rho_12, rho_13, ..., rho_23, ...). Throws PsdError if the result
/// has a negative eigenvalue beyond tolerance.
CovarianceMatrix build_covariance(const std::vector<double>& powers,
                                  const std::vector<double>& rho_upper);

/// Var(Y) = 1 + sum_{j,k} K_jk. Always >= 1 for PSD K.
double output_variance(const CovarianceMatrix& k);

/// Var(Y | X_S) for an index subset S of {0..dim-1}, via the Schur complement
/// of the conditioned block. Singular blocks are handled by pseudo-inverse
/// with pivot tolerance 1e-12 (degenerate inputs carry no extra information).
/// S empty returns Var(Y); S = {0..dim-1} returns 1.
double conditional_output_variance(const CovarianceMatrix& k,
                                   const std::vector<int>& s);

/// I(X;Y) = 1/2 ln Var(Y), in nats.
RateValue mutual_info_all(const CovarianceMatrix& k);

/// I(X_{S^C}; Y | X_S) = 1/2 ln Var(Y | X_S), in nats.
RateValue mutual_info_conditional(const CovarianceMatrix& k,
                                  const std::vector<int>& s);

namespace detail {

// Unvalidated fast paths over raw matrices; callers guarantee symmetry and
// (near-)PSD. Used by the optimizers where constructing a validated
// CovarianceMatrix per evaluation would dominate the cost.
double output_variance_raw(const Eigen::MatrixXd& k);
double conditional_output_variance_raw(const Eigen::MatrixXd& k,
                                       const std::vector<int>& s);

}  // namespace detail

}  // namespace gmacfb
