#include "gmacfb/gaussian.hpp"

#include <algorithm>
#include <cmath>

namespace gmacfb {

namespace {

constexpr double kPsdTraceTol = 1e-10;
constexpr double kPivotTol = 1e-12;
constexpr double kPowerSlack = 1e-12;

void require_subset(int dim, const std::vector<int>& s) {
  std::vector<bool> seen(static_cast<size_t>(dim), false);
  for (int j : s) {
    if (j < 0 || j >= dim)
      throw std::invalid_argument("index set: entry out of range");
    if (seen[static_cast<size_t>(j)])
      throw std::invalid_argument("index set: duplicate entry");
    seen[static_cast<size_t>(j)] = true;
  }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
    throw std::invalid_argument("CovarianceMatrix: square matrix required");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("CovarianceMatrix: matrix must be symmetric");
  entries_ = (0.5 * (entries_ + entries_.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_,
                                                    Eigen::EigenvaluesOnly);
  min_eigenvalue_ = es.eigenvalues().minCoeff();
  if (min_eigenvalue_ < -kPsdTraceTol * entries_.trace())
    throw PsdError("CovarianceMatrix: not positive semidefinite",
                   min_eigenvalue_);
}

double CovarianceMatrix::correlation(int j, int k) const {
  const double qj = q(j), qk = q(k);
  if (qj <= 0.0 || qk <= 0.0) return 0.0;
  return entries_(j, k) / std::sqrt(qj * qk);
}

bool CovarianceMatrix::valid_for(const ChannelConfig& config) const {
  if (config.num_users != dim()) return false;
  for (int j = 0; j < dim(); ++j)
    if (q(j) > config.powers[static_cast<size_t>(j)] + kPowerSlack)
      return false;
  return true;
}

CovarianceMatrix CovarianceMatrix::zero(int dim) {
  return CovarianceMatrix(Eigen::MatrixXd::Zero(dim, dim));
}

CovarianceMatrix build_covariance(const std::vector<double>& powers,
                                  double rho) {
  const int dim = static_cast<int>(powers.size());
  if (dim < 1) throw std::invalid_argument("build_covariance: empty powers");
  if (dim >= 2 && (rho < -1.0 / (dim - 1) - 1e-15 || rho > 1.0 + 1e-15))
    throw std::invalid_argument(
        "build_covariance: equicorrelation requires rho in [-1/(J-1), 1]");
  std::vector<double> upper(static_cast<size_t>(dim * (dim - 1) / 2), rho);
  return build_covariance(powers, upper);
}

CovarianceMatrix build_covariance(const std::vector<double>& powers,
                                  const std::vector<double>& rho_upper) {
  const int dim = static_cast<int>(powers.size());
  if (dim < 1) throw std::invalid_argument("build_covariance: empty powers");
  if (static_cast<int>(rho_upper.size()) != dim * (dim - 1) / 2)
    throw std::invalid_argument(
        "build_covariance: need J(J-1)/2 correlation coefficients");
  for (double p : powers)
    if (!(p > 0.0))
      throw std::invalid_argument("build_covariance: powers must be positive");
  for (double r : rho_upper)
    if (std::abs(r) > 1.0 + 1e-15)
      throw std::invalid_argument("build_covariance: |rho_jk| <= 1 required");

  Eigen::MatrixXd k(dim, dim);
  size_t idx = 0;
  for (int j = 0; j < dim; ++j) {
    k(j, j) = powers[static_cast<size_t>(j)];
    for (int l = j + 1; l < dim; ++l) {
      const double v = rho_upper[idx++] *
                       std::sqrt(powers[static_cast<size_t>(j)] *
                                 powers[static_cast<size_t>(l)]);
      k(j, l) = v;
      k(l, j) = v;
    }
  }
  return CovarianceMatrix(std::move(k));  // PSD validated here
}

namespace detail {

double output_variance_raw(const Eigen::MatrixXd& k) { return 1.0 + k.sum(); }

double conditional_output_variance_raw(const Eigen::MatrixXd& k,
                                       const std::vector<int>& s) {
  const int dim = static_cast<int>(k.rows());
  const int ns = static_cast<int>(s.size());
  if (ns == 0) return output_variance_raw(k);
  if (ns == dim) return 1.0;

  std::vector<bool> in_s(static_cast<size_t>(dim), false);
  for (int j : s) in_s[static_cast<size_t>(j)] = true;
  std::vector<int> t;  // complement, the block that stays random
  t.reserve(static_cast<size_t>(dim - ns));
  for (int j = 0; j < dim; ++j)
    if (!in_s[static_cast<size_t>(j)]) t.push_back(j);

  // Var(Y|X_S) = 1 + 1' (K_TT - K_TS pinv(K_SS) K_ST) 1.
  const int nt = static_cast<int>(t.size());
  Eigen::MatrixXd k_ss(ns, ns), k_ts(nt, ns), k_tt(nt, nt);
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b) k_ss(a, b) = k(s[static_cast<size_t>(a)], s[static_cast<size_t>(b)]);
  for (int a = 0; a < nt; ++a)
    for (int b = 0; b < ns; ++b) k_ts(a, b) = k(t[static_cast<size_t>(a)], s[static_cast<size_t>(b)]);
  for (int a = 0; a < nt; ++a)
    for (int b = 0; b < nt; ++b) k_tt(a, b) = k(t[static_cast<size_t>(a)], t[static_cast<size_t>(b)]);

  const Eigen::VectorXd cross = k_ts.transpose() * Eigen::VectorXd::Ones(nt);
  double reduction = 0.0;
  if (ns == 1) {
    const double pivot = k_ss(0, 0);
    if (pivot > kPivotTol * std::max(1.0, pivot))
      reduction = cross(0) * cross(0) / pivot;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k_ss);
    const double tol =
        kPivotTol * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    const Eigen::VectorXd w = es.eigenvectors().transpose() * cross;
    for (int i = 0; i < ns; ++i)
      if (es.eigenvalues()(i) > tol)
        reduction += w(i) * w(i) / es.eigenvalues()(i);
  }
  const double block_sum = k_tt.sum();
  return 1.0 + std::max(0.0, block_sum - reduction);
}

}  // namespace detail

double output_variance(const CovarianceMatrix& k) {
  return detail::output_variance_raw(k.matrix());
}

double conditional_output_variance(const CovarianceMatrix& k,
                                   const std::vector<int>& s) {
  require_subset(k.dim(), s);
  return detail::conditional_output_variance_raw(k.matrix(), s);
}

RateValue mutual_info_all(const CovarianceMatrix& k) {
  return RateValue{0.5 * std::log(output_variance(k)), Unit::nats};
}

RateValue mutual_info_conditional(const CovarianceMatrix& k,
                                  const std::vector<int>& s) {
  return RateValue{0.5 * std::log(conditional_output_variance(k, s)),
                   Unit::nats};
}

}  // namespace gmacfb
