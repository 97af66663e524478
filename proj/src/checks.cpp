#include "gmacfb/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gmacfb/capacity.hpp"
#include "gmacfb/depbal.hpp"
#include "gmacfb/sampling.hpp"

namespace gmacfb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void track(double slack, double& worst, long& failures) {
  worst = std::min(worst, slack);
  if (slack < 0.0) ++failures;
}

double log_det_pd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  double out = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    const double e = es.eigenvalues()(i);
    if (e <= 1e-13 * scale)
      throw std::domain_error("log_det_pd: matrix is numerically singular");
    out += std::log(e);
  }
  return out;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m,
                          const std::vector<int>& idx) {
  Eigen::MatrixXd out(idx.size(), idx.size());
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = 0; b < idx.size(); ++b)
      out(static_cast<int>(a), static_cast<int>(b)) =
          m(idx[a], idx[b]);
  return out;
}

std::vector<int> set_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

// I(A;B) on a joint Gaussian covariance.
double gaussian_mi(const Eigen::MatrixXd& joint, const std::vector<int>& a,
                   const std::vector<int>& b) {
  return 0.5 * (log_det_pd(submatrix(joint, a)) +
                log_det_pd(submatrix(joint, b)) -
                log_det_pd(submatrix(joint, set_union(a, b))));
}

// I(A;B|C); C may be empty.
double gaussian_cmi(const Eigen::MatrixXd& joint, const std::vector<int>& a,
                    const std::vector<int>& b, const std::vector<int>& c) {
  if (c.empty()) return gaussian_mi(joint, a, b);
  return 0.5 * (log_det_pd(submatrix(joint, set_union(a, c))) +
                log_det_pd(submatrix(joint, set_union(b, c))) -
                log_det_pd(submatrix(joint, set_union(set_union(a, b), c))) -
                log_det_pd(submatrix(joint, c)));
}

// Degree-4 expansion of the second derivative of ell in gamma = beta - 1,
// with M = J - 3 (three or more users). Every coefficient is a sum of
// positive terms, so positivity is expected at all sampled points.
double ell_second_derivative_poly(double gamma, double m, double p) {
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  const double m2 = m * m, m3 = m2 * m;
  const double c0 = m3 * p4 + 8 * m2 * p4 + 2 * m2 * p3 + 22 * m * p4 +
                    14 * m * p3 + 3 * m * p2 + 21 * p4 + 24 * p3 + 11 * p2 +
                    2 * p;
  const double c1 = 2 * m3 * p4 + 16 * m2 * p4 + 2 * m2 * p3 + 46 * m * p4 +
                    20 * m * p3 + 2 * m * p2 + 48 * p4 + 42 * p3 + 10 * p2;
  const double c2 = m3 * p4 + 9 * m2 * p4 + 33 * m * p4 + 10 * m * p3 +
                    45 * p4 + 30 * p3 + 2 * p2;
  const double c3 = 2 * m2 * p4 + 16 * m * p4 + 4 * m * p3 + 30 * p4 + 12 * p3;
  const double c4 = m2 * p4 + 7 * m * p4 + 12 * p4;
  return c0 + gamma * (c1 + gamma * (c2 + gamma * (c3 + gamma * c4)));
}

CheckReport merge(std::vector<CheckReport> parts) {
  CheckReport out = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) {
    out.trials += parts[i].trials;
    out.failures += parts[i].failures;
    out.worst_margin = std::min(out.worst_margin, parts[i].worst_margin);
    if (!parts[i].notes.empty()) {
      if (!out.notes.empty()) out.notes += "; ";
      out.notes += parts[i].notes;
    }
  }
  return out;
}

}  // namespace

CheckReport check_ell_convexity(int users, double power, double grid_step) {
  if (!(grid_step > 0.0))
    throw std::invalid_argument("check_ell_convexity: grid_step must be > 0");
  CheckReport report;
  report.check_name = "ell_convexity";
  report.worst_margin = kInf;

  const double h = grid_step;
  const double lo = 1.0 + h;
  const double hi = static_cast<double>(users) - h;
  const double m = static_cast<double>(users - 3);
  constexpr double kDiffTol = 1e-8;
  int sign_mismatches = 0;

  for (double beta = lo; beta <= hi + 0.5 * h; beta += h) {
    const double b = std::min(beta, hi);
    const double d2 = (ell(b - h, users, power) - 2.0 * ell(b, users, power) +
                       ell(b + h, users, power)) /
                      (h * h);
    track(d2 + kDiffTol, report.worst_margin, report.failures);
    ++report.trials;

    if (users >= 3) {
      const double poly = ell_second_derivative_poly(b - 1.0, m, power);
      track(poly, report.worst_margin, report.failures);
      ++report.trials;
      if ((d2 < -kDiffTol) != (poly <= 0.0)) ++sign_mismatches;
    }
  }
  if (sign_mismatches > 0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "second difference and polynomial disagree in sign at %d "
                  "grid points (J=%d, P=%g)",
                  sign_mismatches, users, power);
    report.notes = buf;
  }
  return report;
}

CheckReport check_bernoulli_gap(int users, double power) {
  CheckReport report;
  report.check_name = "bernoulli_gap";
  report.trials = 1;
  const double j = static_cast<double>(users);
  // strict gap of (1+(J-1)P)^J over (1+JP)^{J-1}, in the log domain
  const double gap =
      j * std::log1p((j - 1.0) * power) - (j - 1.0) * std::log1p(j * power);
  report.worst_margin = gap;
  if (!(gap > 0.0)) report.failures = 1;
  return report;
}

CheckReport check_amgm_cs(int users, double power, int trials,
                          std::uint64_t seed) {
  CheckReport report;
  report.check_name = "amgm_cs";
  report.seed = seed;
  report.worst_margin = kInf;
  Rng rng(seed);
  const double j = static_cast<double>(users);
  const std::vector<double> diag(static_cast<size_t>(users), power);

  const auto product_log = [&](const Eigen::MatrixXd& m) {
    const double total = m.sum();
    double out = 0.0;
    for (int a = 0; a < users; ++a) {
      const double row = m.row(a).sum();
      out += std::log1p(total - row * row / power);
    }
    return out;
  };
  const auto bound_log = [&](const Eigen::MatrixXd& m) {
    const double mean_rho = (m.sum() / power - j) / (j * (j - 1.0));
    const double beta = 1.0 + (j - 1.0) * mean_rho;
    return j * std::log1p(power * beta * (j - beta));
  };
  const auto max_deviation = [&](const Eigen::MatrixXd& m) {
    const double mean_rho = (m.sum() / power - j) / (j * (j - 1.0));
    double dev = 0.0;
    for (int a = 0; a < users; ++a)
      for (int b = a + 1; b < users; ++b)
        dev = std::max(dev, std::abs(m(a, b) / power - mean_rho));
    return dev;
  };

  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXd m = random_covariance_raw(rng, diag);
    const double slack = bound_log(m) - product_log(m);
    track(slack + 1e-10, report.worst_margin, report.failures);
    ++report.trials;

    // the gap must be strictly positive away from the equicorrelated family
    if (max_deviation(m) > 1e-2) {
      track(slack, report.worst_margin, report.failures);
      ++report.trials;
    }

    if (t % 4 == 0) {  // equality holds exactly on the equicorrelated family
      double mean_rho = (m.sum() / power - j) / (j * (j - 1.0));
      mean_rho = std::clamp(mean_rho, -1.0 / (j - 1.0) + 1e-6, 1.0 - 1e-6);
      Eigen::MatrixXd eq =
          Eigen::MatrixXd::Constant(users, users, mean_rho * power);
      for (int a = 0; a < users; ++a) eq(a, a) = power;
      const double eq_gap = std::abs(bound_log(eq) - product_log(eq));
      track(1e-9 - eq_gap, report.worst_margin, report.failures);
      ++report.trials;
    }
  }
  return report;
}

CheckReport check_oppenheim_step(int trials, std::uint64_t seed) {
  CheckReport report;
  report.check_name = "oppenheim_step";
  report.seed = seed;
  report.worst_margin = kInf;
  Rng rng(seed);
  long det_applicable = 0;

  for (int t = 0; t < trials; ++t) {
    const int users = 2 + t % 4;
    std::vector<double> powers(static_cast<size_t>(users));
    std::vector<double> input_powers(static_cast<size_t>(users));
    for (int a = 0; a < users; ++a) {
      powers[static_cast<size_t>(a)] = rng.uniform(0.2, 5.0);
      const double frac = a == 0 ? rng.uniform(0.05, 0.95) : rng.uniform(0.3, 1.0);
      input_powers[static_cast<size_t>(a)] = frac * powers[static_cast<size_t>(a)];
    }
    const double lambda = (t % 5 == 0) ? 0.0 : rng.uniform(0.0, 4.0);

    Eigen::MatrixXd k = random_covariance_raw(rng, input_powers);
    Eigen::MatrixXd k_pinned = k;
    k_pinned(0, 0) = powers[0];  // raise Q_1 to P_1, all else unchanged

    const Partition singles = Partition::singletons(users);
    const double h_before =
        s_lambda_gaussian(lambda, CovarianceMatrix(k), singles);
    const double h_after =
        s_lambda_gaussian(lambda, CovarianceMatrix(k_pinned), singles);
    track(h_before - h_after + 1e-12, report.worst_margin, report.failures);
    ++report.trials;

    const double ky = 1.0 + k.sum();
    const double delta = powers[0] - input_powers[0];
    const double e = (ky + delta) / ky;
    if (lambda == 0.0) {
      const double dev = std::abs((h_after - h_before) + 0.5 * std::log(e));
      track(1e-12 - dev, report.worst_margin, report.failures);
      ++report.trials;
    }

    // determinant form of the pinning step, where its hypothesis applies:
    // the multiplier matrix [[D,F],[F,E]] must itself be PSD
    const double cov1 = k.row(0).sum();
    if (std::abs(cov1) > 1e-9 * std::max(1.0, ky)) {
      const double d = powers[0] / input_powers[0];
      const double f = (cov1 + delta) / cov1;
      if (d * e >= f * f * (1.0 - 1e-12)) {
        ++det_applicable;
        const double det_before = input_powers[0] * ky - cov1 * cov1;
        const double det_after =
            powers[0] * (ky + delta) - (cov1 + delta) * (cov1 + delta);
        const double scaled = d * e * det_before;
        const double rel_slack =
            (det_after - scaled) / std::max(std::abs(scaled), 1e-300);
        track(rel_slack + 1e-9, report.worst_margin, report.failures);
        ++report.trials;
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf),
                "determinant subcheck applicable in %ld of %d trials",
                det_applicable, trials);
  report.notes = buf;
  return report;
}

CheckReport check_factorization_identity(const CovarianceMatrix& k,
                                         double lambda,
                                         const Partition& partition) {
  if (partition.num_users() != k.dim())
    throw std::invalid_argument(
        "check_factorization_identity: partition/covariance mismatch");
  CheckReport report;
  report.check_name = "factorization_identity";
  report.worst_margin = kInf;
  const int users = k.dim();
  const int n = 2 * users + 2;  // (X_a, X_b, Y_a, Y_b)

  // joint covariance of two independent channel uses
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(n, n);
  const Eigen::VectorXd cross = k.matrix() * Eigen::VectorXd::Ones(users);
  const double ky = 1.0 + k.matrix().sum();
  for (int use = 0; use < 2; ++use) {
    const int x0 = use * users;
    const int y = 2 * users + use;
    joint.block(x0, x0, users, users) = k.matrix();
    joint.block(x0, y, users, 1) = cross;
    joint.block(y, x0, 1, users) = cross.transpose();
    joint(y, y) = ky;
  }

  // orthogonal rotation to the sum/difference pair
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd rot = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < users; ++i) {
    rot(i, i) = s;
    rot(i, users + i) = s;
    rot(users + i, i) = s;
    rot(users + i, users + i) = -s;
  }
  rot(2 * users, 2 * users) = s;
  rot(2 * users, 2 * users + 1) = s;
  rot(2 * users + 1, 2 * users) = s;
  rot(2 * users + 1, 2 * users + 1) = -s;
  const Eigen::MatrixXd rotated = rot * joint * rot.transpose();

  std::vector<int> x_sum(static_cast<size_t>(users));
  std::vector<int> x_diff(static_cast<size_t>(users));
  for (int i = 0; i < users; ++i) {
    x_sum[static_cast<size_t>(i)] = i;
    x_diff[static_cast<size_t>(i)] = users + i;
  }
  const std::vector<int> outputs = {2 * users, 2 * users + 1};

  const double m = static_cast<double>(partition.size());
  double block_info_sum = 0.0;
  constexpr double kTol = 1e-10;
  for (const auto& block : partition.blocks()) {
    std::vector<int> both;
    for (int i : block) both.push_back(i);
    for (int i : block) both.push_back(users + i);
    block_info_sum += gaussian_mi(rotated, both, outputs);

    // conditioned on [X_a]_S, the first output carries nothing about [X_b]_S
    std::vector<int> sum_part(block.begin(), block.end());
    std::vector<int> diff_part;
    for (int i : block) diff_part.push_back(users + i);
    const double leak = gaussian_cmi(rotated, {2 * users}, diff_part, sum_part);
    track(kTol - std::abs(leak), report.worst_margin, report.failures);
    ++report.trials;
  }

  const double info_all =
      gaussian_mi(rotated, set_union(x_sum, x_diff), outputs);
  const double two_letter =
      -(lambda / (m - 1.0) + 1.0) * info_all +
      lambda / (m - 1.0) * block_info_sum;
  const double one_letter = s_lambda_gaussian(lambda, k, partition);
  track(kTol - std::abs(two_letter - 2.0 * one_letter), report.worst_margin,
        report.failures);
  ++report.trials;
  return report;
}

CheckReport check_lambda_star_positive(int users, double power) {
  CheckReport report;
  report.check_name = "lambda_star_positive";
  report.trials = 1;
  const CapacitySolution sol = solve_beta(users, power);
  report.worst_margin = sol.lambda_star;
  if (!(sol.lambda_star > 0.0)) report.failures = 1;
  return report;
}

std::vector<CheckReport> run_suite(const std::string& name, int trials,
                                   std::uint64_t seed) {
  const std::vector<double> p_log_grid = {1e-3, 3.16e-3, 1e-2, 3.16e-2, 0.1,
                                          0.316, 1.0,    3.16,  10.0,   31.6,
                                          100.0, 316.0,  1000.0};
  std::vector<CheckReport> out;

  const auto want = [&](const std::string& suite) {
    return name == "all" || name == suite;
  };
  bool known = name == "all";

  if (want("bernoulli")) {
    known = true;
    std::vector<CheckReport> parts;
    for (int users = 2; users <= 10; ++users)
      for (double p : p_log_grid) parts.push_back(check_bernoulli_gap(users, p));
    out.push_back(merge(std::move(parts)));
  }
  if (want("convexity")) {
    known = true;
    std::vector<CheckReport> parts;
    const std::vector<std::pair<int, double>> grid = {
        {2, 0.01}, {2, 1.0},  {3, 0.3},  {3, 1.0},  {3, 10.0},
        {5, 0.1},  {5, 1.0},  {10, 0.01}, {10, 10.0}};
    for (auto [users, p] : grid) parts.push_back(check_ell_convexity(users, p));
    out.push_back(merge(std::move(parts)));
  }
  if (want("amgm")) {
    known = true;
    std::vector<CheckReport> parts;
    const std::vector<std::pair<int, double>> grid = {
        {2, 1.0}, {3, 0.3}, {3, 1.0}, {3, 3.0}, {4, 1.0}, {5, 1.0}};
    const int per_cell =
        (trials + static_cast<int>(grid.size()) - 1) / static_cast<int>(grid.size());
    std::uint64_t idx = 0;
    for (auto [users, p] : grid)
      parts.push_back(check_amgm_cs(users, p, per_cell, mix_seed(seed, idx++)));
    auto merged = merge(std::move(parts));
    merged.seed = seed;
    out.push_back(std::move(merged));
  }
  if (want("oppenheim")) {
    known = true;
    out.push_back(check_oppenheim_step(trials, seed));
  }
  if (want("factorization")) {
    known = true;
    std::vector<CheckReport> parts;
    Rng rng(mix_seed(seed, 0xfac));
    for (int t = 0; t < trials; ++t) {
      const int users = 2 + t % 3;
      std::vector<double> diag(static_cast<size_t>(users));
      for (auto& q : diag) q = rng.uniform(0.2, 4.0);
      CovarianceMatrix k = CovarianceMatrix::zero(users);
      switch (t % 3) {
        case 0: {  // independent inputs
          Eigen::MatrixXd d = Eigen::MatrixXd::Zero(users, users);
          for (int a = 0; a < users; ++a) d(a, a) = diag[static_cast<size_t>(a)];
          k = CovarianceMatrix(std::move(d));
          break;
        }
        case 1: {  // common correlation coefficient
          const double rho = rng.uniform(-1.0 / (users - 1) + 0.05, 0.9);
          k = build_covariance(diag, rho);
          break;
        }
        default: {
          // blend toward the diagonal so the instances stay well-conditioned;
          // the identities are checked to 1e-10 and near-singular draws lose
          // more than that to rounding in the log-determinants
          Eigen::MatrixXd m = 0.9 * random_covariance_raw(rng, diag);
          for (int a = 0; a < users; ++a) m(a, a) = diag[static_cast<size_t>(a)];
          k = CovarianceMatrix(std::move(m));
        }
      }
      const double lambda = rng.uniform(0.0, 4.0);
      const Partition partition = (t % 2 == 0)
                                      ? Partition::singletons(users)
                                      : random_partition(rng, users);
      auto part = check_factorization_identity(k, lambda, partition);
      part.seed = seed;
      parts.push_back(std::move(part));
    }
    out.push_back(merge(std::move(parts)));
  }
  if (want("lambda_star")) {
    known = true;
    std::vector<CheckReport> parts;
    for (int users = 2; users <= 10; ++users)
      for (double p : p_log_grid)
        parts.push_back(check_lambda_star_positive(users, p));
    parts.push_back(check_lambda_star_positive(3, 0.3));
    out.push_back(merge(std::move(parts)));
  }
  if (!known) throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
  return out;
}

std::string format_report(const CheckReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%-24s trials=%-6ld failures=%-4ld worst_margin=%.17g seed=%llu",
                report.check_name.c_str(), report.trials, report.failures,
                report.worst_margin,
                static_cast<unsigned long long>(report.seed));
  std::string out(buf);
  if (!report.notes.empty()) {
    out += "\n    note: ";
    out += report.notes;
  }
  return out;
}

}  // namespace gmacfb
