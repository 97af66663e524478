#pragma once

#include <vector>

#include "gmacfb/types.hpp"

namespace gmacfb {

struct TwoUserCuts {
  double f1 = 0.0;  // 1/2 ln(1 + 2P(1+rho))
  double f2 = 0.0;  // ln(1 + P(1-rho^2))
};

struct ThreeUserCuts {
  double g1 = 0.0;  // 1/2 ln(1 + 3P(1+2rho))
  double g2 = 0.0;  // 3/4 ln(1 + 2P(1-rho)(1+2rho))
  double g3 = 0.0;  // 3/2 ln(1 + P(1+2rho)(1-rho)/(1+rho))
};

/// Two-user symmetric cut curves in nats; rho in [-1, 1], P > 0.
TwoUserCuts two_user_cuts(double power, double rho);

/// Three-user symmetric cut curves in nats; rho in [-1/2, 1], P > 0.
ThreeUserCuts three_user_cuts(double power, double rho);

/// Symmetry-averaged sum-rate cut of size k for the equicorrelated J-user
/// channel: (J / 2k) ln Var(Y | X_{S^C}) with |S| = k. Reproduces the
/// two- and three-user curves (k indexes the cut size: f2 is k=1, f1 is k=2;
/// g3, g2, g1 are k=1,2,3). Requires rho in [-1/(J-1), 1].
RateValue general_cut(int users, double power, double rho, int cut_size);

/// All cut sizes at one correlation coefficient; values[k-1] is the size-k
/// bound in nats.
struct CutCurvePoint {
  double rho = 0.0;
  std::vector<double> values;
};

CutCurvePoint cut_curve_point(int users, double power, double rho);

/// Max-min cut-set bound with its optimizer.
struct BoundReport {
  RateValue bound;
  double rho_star = 0.0;
  /// Cut sizes whose curves sit within 1e-8 nats of the envelope at rho_star.
  std::vector<int> binding_cuts;
};

/// max over rho of min over k in {1..J} of general_cut(J, P, rho, k).
/// Dense grid (step 1e-3) over the PSD-feasible rho interval followed by
/// golden-section refinement of the min-envelope to 1e-10 in rho.
BoundReport cutset_sum_bound(int users, double power);

}  // namespace gmacfb
