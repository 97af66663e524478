#include "gmacfb/cutset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmacfb/gaussian.hpp"
#include "gmacfb/optim.hpp"

namespace gmacfb {

namespace {

constexpr double kGridStep = 1e-3;
constexpr double kRhoTol = 1e-10;
constexpr double kBindingTol = 1e-8;

void require_power(double power) {
  if (!(power > 0.0) || !std::isfinite(power))
    throw std::invalid_argument("power must be positive");
}

double rho_lower_bound(int users) { return -1.0 / (users - 1); }

// Cut value at one rho, via the equicorrelated covariance; k = cut size.
double cut_value_nats(int users, double power, double rho, int cut_size) {
  const std::vector<double> powers(static_cast<size_t>(users), power);
  CovarianceMatrix k = build_covariance(powers, rho);
  std::vector<int> conditioned;  // S^C = {cut_size..J-1}
  for (int j = cut_size; j < users; ++j) conditioned.push_back(j);
  const double var = conditional_output_variance(k, conditioned);
  return static_cast<double>(users) / (2.0 * cut_size) * std::log(var);
}

// min over cut sizes of the cut curves at one rho
double envelope(int users, double power, double rho) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= users; ++k)
    best = std::min(best, cut_value_nats(users, power, rho, k));
  return best;
}

}  // namespace

TwoUserCuts two_user_cuts(double power, double rho) {
  require_power(power);
  if (rho < -1.0 || rho > 1.0)
    throw std::invalid_argument("two_user_cuts: rho must lie in [-1, 1]");
  TwoUserCuts out;
  out.f1 = 0.5 * std::log1p(2.0 * power * (1.0 + rho));
  out.f2 = std::log1p(power * (1.0 - rho * rho));
  return out;
}

ThreeUserCuts three_user_cuts(double power, double rho) {
  require_power(power);
  if (rho < -0.5 || rho > 1.0)
    throw std::invalid_argument("three_user_cuts: rho must lie in [-1/2, 1]");
  ThreeUserCuts out;
  out.g1 = 0.5 * std::log1p(3.0 * power * (1.0 + 2.0 * rho));
  out.g2 = 0.75 * std::log1p(2.0 * power * (1.0 - rho) * (1.0 + 2.0 * rho));
  out.g3 = 1.5 * std::log1p(power * (1.0 + 2.0 * rho) * (1.0 - rho) / (1.0 + rho));
  return out;
}

RateValue general_cut(int users, double power, double rho, int cut_size) {
  require_power(power);
  if (users < 2) throw std::invalid_argument("general_cut: need J >= 2");
  if (cut_size < 1 || cut_size > users)
    throw std::invalid_argument("general_cut: cut size must lie in {1..J}");
  if (rho < rho_lower_bound(users) - 1e-15 || rho > 1.0 + 1e-15)
    throw std::invalid_argument(
        "general_cut: rho outside the PSD range [-1/(J-1), 1]");
  return RateValue{cut_value_nats(users, power, rho, cut_size), Unit::nats};
}

CutCurvePoint cut_curve_point(int users, double power, double rho) {
  CutCurvePoint point;
  point.rho = rho;
  point.values.reserve(static_cast<size_t>(users));
  for (int k = 1; k <= users; ++k)
    point.values.push_back(general_cut(users, power, rho, k).value);
  return point;
}

BoundReport cutset_sum_bound(int users, double power) {
  require_power(power);
  if (users < 2) throw std::invalid_argument("cutset_sum_bound: need J >= 2");

  const double lo = rho_lower_bound(users);
  const double hi = 1.0;

  // Dense scan of the min-envelope; unimodality is not certified, so the
  // grid comes first and golden-section only polishes the winning cell.
  double best_rho = lo;
  double best_val = -std::numeric_limits<double>::infinity();
  const long cells = std::lround(std::ceil((hi - lo) / kGridStep));
  for (long i = 0; i <= cells; ++i) {
    const double rho = std::min(hi, lo + kGridStep * static_cast<double>(i));
    const double v = envelope(users, power, rho);
    if (v > best_val) {
      best_val = v;
      best_rho = rho;
    }
  }

  const double window_lo = std::max(lo, best_rho - kGridStep);
  const double window_hi = std::min(hi, best_rho + kGridStep);
  double refined_val = 0.0;
  const double refined_rho = golden_section_max(
      [&](double rho) { return envelope(users, power, rho); }, window_lo,
      window_hi, kRhoTol, &refined_val);

  BoundReport report;
  report.bound = RateValue{refined_val, Unit::nats};
  report.rho_star = refined_rho;
  const CutCurvePoint at_star = cut_curve_point(users, power, refined_rho);
  for (int k = 1; k <= users; ++k)
    if (at_star.values[static_cast<size_t>(k - 1)] <= refined_val + kBindingTol)
      report.binding_cuts.push_back(k);
  return report;
}

}  // namespace gmacfb
