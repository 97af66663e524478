#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmacfb/gaussian.hpp"
#include "gmacfb/types.hpp"

namespace gmacfb {

/// Result of one mechanized numeric check. `worst_margin` is the smallest
/// slack observed before the check would fail (positive = healthy), so
/// numeric regressions show up even while failures stay at zero.
struct CheckReport {
  std::string check_name;
  long trials = 0;
  long failures = 0;
  double worst_margin = 0.0;
  std::uint64_t seed = 0;
  std::string notes;
};

/// Second central differences of ell over a beta grid on [1, J] must be
/// >= -1e-8; for J >= 3 the degree-4 polynomial expression for the second
/// derivative (in gamma = beta-1, with M = J-3) must be positive at the same
/// points. If the two ever disagree in sign, both readings are reported in
/// `notes` rather than silently failing one of them.
CheckReport check_ell_convexity(int users, double power,
                                double grid_step = 1e-3);

/// Strict gap (1+JP)^{J-1} < (1+(J-1)P)^J, evaluated in the log domain.
CheckReport check_bernoulli_gap(int users, double power);

/// Product bound prod_j(1 + sum M - (sum_k M_jk)^2/P) <= (1+P b(J-b))^J with
/// b = 1+(J-1)*(mean correlation), for random PSD M with diagonal P.
/// Equality within 1e-9 must hold exactly for equicorrelated M.
CheckReport check_amgm_cs(int users, double power, int trials,
                          std::uint64_t seed);

/// Pinning Q_1 := P_1 (adding P_1-Q_1 to K_11) never increases the penalized
/// objective; where the Hadamard-multiplier matrix [[D,F],[F,E]] is PSD, the
/// determinant inequality det K'_{X1 Y} >= D E det K_{X1 Y} is verified too.
CheckReport check_oppenheim_step(int trials, std::uint64_t seed);

/// Two independent channel uses rotated by (u+v)/sqrt2, (u-v)/sqrt2: the
/// two-letter penalized objective equals twice the one-letter objective, and
/// I(Y_a; [X_b]_{S_m} | [X_a]_{S_m}) = 0 for every block, all computed on the
/// (2J+2)-dimensional joint covariance.
CheckReport check_factorization_identity(const CovarianceMatrix& k,
                                         double lambda,
                                         const Partition& partition);

/// lambda*(J, P, beta*) > 0 at the solved root.
CheckReport check_lambda_star_positive(int users, double power);

/// Named suites over fixed desk-scale grids: "convexity", "bernoulli",
/// "amgm", "oppenheim", "factorization", "lambda_star", or "all".
/// `trials` applies to the randomized suites. Throws std::invalid_argument
/// for an unknown name.
std::vector<CheckReport> run_suite(const std::string& name, int trials,
                                   std::uint64_t seed);

std::string format_report(const CheckReport& report);

}  // namespace gmacfb
