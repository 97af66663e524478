#include "gmacfb/depbal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmacfb/optim.hpp"
#include "gmacfb/sampling.hpp"

namespace gmacfb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int rho_dimension(int users) { return users * (users - 1) / 2; }

Eigen::MatrixXd covariance_from_rho(const std::vector<double>& powers,
                                    const Eigen::VectorXd& rho) {
  const int dim = static_cast<int>(powers.size());
  Eigen::MatrixXd k(dim, dim);
  int idx = 0;
  for (int j = 0; j < dim; ++j) {
    k(j, j) = powers[static_cast<size_t>(j)];
    for (int l = j + 1; l < dim; ++l) {
      const double v = rho(idx++) * std::sqrt(powers[static_cast<size_t>(j)] *
                                              powers[static_cast<size_t>(l)]);
      k(j, l) = v;
      k(l, j) = v;
    }
  }
  return k;
}

// log det of the correlation matrix with unit diagonal and entries rho;
// -inf when not positive definite.
double correlation_log_det(int users, const Eigen::VectorXd& rho) {
  Eigen::MatrixXd r(users, users);
  int idx = 0;
  for (int j = 0; j < users; ++j) {
    r(j, j) = 1.0;
    for (int l = j + 1; l < users; ++l) {
      r(j, l) = rho(idx);
      r(l, j) = rho(idx);
      ++idx;
    }
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(r);
  if (ldlt.info() != Eigen::Success) return -kInf;
  double log_det = 0.0;
  for (int i = 0; i < users; ++i) {
    const double d = ldlt.vectorD()(i);
    if (d <= 0.0) return -kInf;
    log_det += std::log(d);
  }
  return log_det;
}

double s_lambda_raw(double lambda, const Eigen::MatrixXd& k,
                    const Partition& partition) {
  const double m = static_cast<double>(partition.size());
  double conditional_sum = 0.0;
  for (int b = 0; b < partition.size(); ++b) {
    const double var = detail::conditional_output_variance_raw(
        k, partition.blocks()[static_cast<size_t>(b)]);
    conditional_sum += 0.5 * std::log(var);
  }
  const double info_all = 0.5 * std::log(detail::output_variance_raw(k));
  return (lambda - 1.0) * info_all - lambda / (m - 1.0) * conditional_sum;
}

std::vector<Eigen::VectorXd> make_starts(int users,
                                         const InnerMinOptions& options) {
  const int d = rho_dimension(users);
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Zero(d));
  for (double r : {0.2, 0.5, 0.8})
    starts.push_back(Eigen::VectorXd::Constant(d, r));
  Rng rng(mix_seed(options.seed, 0x1d5));
  const std::vector<double> unit_diag(static_cast<size_t>(users), 1.0);
  while (static_cast<int>(starts.size()) < std::max(options.starts, 1)) {
    // off-diagonals of a random correlation matrix, pulled toward the interior
    const Eigen::MatrixXd r = random_covariance_raw(rng, unit_diag);
    Eigen::VectorXd rho(d);
    int idx = 0;
    for (int j = 0; j < users; ++j)
      for (int l = j + 1; l < users; ++l) rho(idx++) = 0.9 * r(j, l);
    starts.push_back(std::move(rho));
  }
  if (options.warm_start && options.warm_start->size() == d)
    starts.push_back(*options.warm_start);
  return starts;
}

}  // namespace

double h_value(double lambda, const CovarianceMatrix& k,
               const std::vector<double>& powers) {
  if (lambda < 0.0) throw std::invalid_argument("h_value: lambda must be >= 0");
  const int dim = k.dim();
  if (static_cast<int>(powers.size()) != dim)
    throw std::invalid_argument("h_value: one power limit per user");
  if (!k.valid_for(ChannelConfig(dim, powers)))
    throw std::invalid_argument("h_value: K exceeds the power limits");

  const double total = k.matrix().sum();
  const Eigen::VectorXd row_sums = k.matrix().rowwise().sum();
  double conditional_terms = 0.0;
  for (int j = 0; j < dim; ++j) {
    const double arg =
        1.0 + total - row_sums(j) * row_sums(j) / powers[static_cast<size_t>(j)];
    if (!(arg > 0.0))
      throw std::domain_error("h_value: nonpositive log argument (Q_j > P_j)");
    conditional_terms += std::log(arg);
  }
  return 0.5 * (lambda - 1.0) * std::log1p(total) -
         lambda / (2.0 * (dim - 1.0)) * conditional_terms;
}

double s_lambda_gaussian(double lambda, const CovarianceMatrix& k,
                         const Partition& partition) {
  if (partition.num_users() != k.dim())
    throw std::invalid_argument("s_lambda_gaussian: partition/covariance mismatch");
  return s_lambda_raw(lambda, k.matrix(), partition);
}

FeasibilityResult depbal_feasible(const CovarianceMatrix& k,
                                  const Partition& partition) {
  if (partition.num_users() != k.dim())
    throw std::invalid_argument("depbal_feasible: partition/covariance mismatch");
  const double m = static_cast<double>(partition.size());
  double conditional_sum = 0.0;
  for (int b = 0; b < partition.size(); ++b)
    conditional_sum +=
        as_nats(mutual_info_conditional(k, partition.blocks()[static_cast<size_t>(b)]));
  const double slack = conditional_sum / (m - 1.0) - as_nats(mutual_info_all(k));
  return FeasibilityResult{slack >= 0.0, slack};
}

InnerMinResult inner_min(double lambda, const std::vector<double>& powers,
                         const Partition& partition,
                         const InnerMinOptions& options) {
  if (lambda < 0.0)
    throw std::invalid_argument("inner_min: lambda must be >= 0");
  const int users = static_cast<int>(powers.size());
  if (partition.num_users() != users)
    throw std::invalid_argument("inner_min: partition/powers mismatch");
  ChannelConfig config(users, powers);  // validates the powers
  const int d = rho_dimension(users);

  const auto pure = [&](const Eigen::VectorXd& rho) {
    return s_lambda_raw(lambda, covariance_from_rho(powers, rho), partition);
  };
  const auto penalized = [&](const Eigen::VectorXd& rho, double weight) {
    const double log_det = correlation_log_det(users, rho);
    if (log_det == -kInf) return kInf;
    return pure(rho) - weight * log_det;
  };

  Eigen::VectorXd best_rho;
  double best_value = kInf;
  const int max_evals = options.max_evaluations_per_round > 0
                            ? options.max_evaluations_per_round
                            : 350 * (d + 1);

  for (const Eigen::VectorXd& start : make_starts(users, options)) {
    if (correlation_log_det(users, start) == -kInf) continue;
    Eigen::VectorXd x = start;
    double weight = options.barrier_weight;
    double radius = 0.2;
    for (int round = 0; round < options.barrier_rounds; ++round) {
      NelderMeadOptions nm;
      nm.initial_radius = radius;
      nm.max_evaluations = max_evals;
      nm.ftol = 1e-13;
      nm.xtol = round + 1 == options.barrier_rounds ? 1e-10 : 1e-7;
      const auto result = nelder_mead(
          [&](const Eigen::VectorXd& rho) { return penalized(rho, weight); },
          x, nm);
      x = result.x;
      weight *= 0.1;
      radius *= 0.25;
    }
    const double value = pure(x);
    if (value < best_value) {
      best_value = value;
      best_rho = x;
    }
  }
  if (!std::isfinite(best_value))
    throw std::logic_error("inner_min: no feasible start");  // rho = 0 is always feasible

  return InnerMinResult(CovarianceMatrix(covariance_from_rho(powers, best_rho)),
                        best_value, best_rho);
}

DualBoundResult dual_bound(const std::vector<double>& powers,
                           const Partition& partition,
                           const DualBoundOptions& options) {
  InnerMinOptions inner_options;
  inner_options.seed = options.seed;

  std::vector<std::pair<double, double>> samples;
  std::optional<Eigen::VectorXd> warm;
  const auto dual_value = [&](double lambda) {
    inner_options.warm_start = warm;
    const InnerMinResult r = inner_min(lambda, powers, partition, inner_options);
    warm = r.rho;
    samples.emplace_back(lambda, r.value);
    return r.value;
  };

  // geometric bracket expansion from [0, 1]
  double prev_lambda = 0.0;
  double prev_value = dual_value(0.0);
  double lo = 0.0, hi = 1.0;
  double before_prev_lambda = 0.0;
  for (int k = 0;; ++k) {
    const double next_lambda = std::pow(2.0, k);  // 1, 2, 4, ...
    const double next_value = dual_value(next_lambda);
    if (next_value < prev_value) {
      lo = before_prev_lambda;
      hi = next_lambda;
      break;
    }
    before_prev_lambda = prev_lambda;
    prev_lambda = next_lambda;
    prev_value = next_value;
    if (k > 60)
      throw std::logic_error("dual_bound: dual never started decreasing");
  }

  const double lambda_opt =
      golden_section_max(dual_value, lo, hi, options.lambda_tol);
  inner_options.warm_start = warm;
  const InnerMinResult final_inner =
      inner_min(lambda_opt, powers, partition, inner_options);

  // concavity sanity: the sampled dual must be unimodal within tolerance
  std::sort(samples.begin(), samples.end());
  size_t peak = 0;
  for (size_t i = 1; i < samples.size(); ++i)
    if (samples[i].second > samples[peak].second) peak = i;
  bool warning = false;
  constexpr double kUnimodalTol = 1e-6;
  for (size_t i = 1; i <= peak; ++i)
    if (samples[i].second < samples[i - 1].second - kUnimodalTol) warning = true;
  for (size_t i = peak + 1; i < samples.size(); ++i)
    if (samples[i].second > samples[i - 1].second + kUnimodalTol) warning = true;

  const RateValue bound_nats{-final_inner.value, Unit::nats};
  return DualBoundResult(convert_rate(bound_nats, options.unit), lambda_opt,
                         final_inner.k, final_inner.value, partition, warning);
}

}  // namespace gmacfb
