#include "gmacfb/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace gmacfb {

double Rng::uniform() {
  // 53-bit mantissa from the top bits of the standardized output stream.
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over seed ^ golden-ratio-stepped index
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Eigen::MatrixXd random_covariance_raw(Rng& rng,
                                      const std::vector<double>& diagonal) {
  const int dim = static_cast<int>(diagonal.size());
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = rng.normal();
  Eigen::MatrixXd w = a * a.transpose();
  Eigen::VectorXd scale(dim);
  for (int i = 0; i < dim; ++i)
    scale(i) = std::sqrt(diagonal[static_cast<size_t>(i)] / w(i, i));
  Eigen::MatrixXd k = scale.asDiagonal() * w * scale.asDiagonal();
  // force exact symmetry and an exact diagonal
  k = (0.5 * (k + k.transpose())).eval();
  for (int i = 0; i < dim; ++i) k(i, i) = diagonal[static_cast<size_t>(i)];
  return k;
}

CovarianceMatrix random_covariance(Rng& rng,
                                   const std::vector<double>& diagonal) {
  return CovarianceMatrix(random_covariance_raw(rng, diagonal));
}

Partition random_partition(Rng& rng, int num_users) {
  const int blocks = rng.uniform_int(2, num_users);
  std::vector<int> order(static_cast<size_t>(num_users));
  for (int j = 0; j < num_users; ++j) order[static_cast<size_t>(j)] = j;
  for (int j = num_users - 1; j > 0; --j)
    std::swap(order[static_cast<size_t>(j)],
              order[static_cast<size_t>(rng.uniform_int(0, j))]);
  std::vector<std::vector<int>> assignment(static_cast<size_t>(blocks));
  // first `blocks` users guarantee nonempty blocks, the rest land anywhere
  for (int j = 0; j < num_users; ++j) {
    const int b = j < blocks ? j : rng.uniform_int(0, blocks - 1);
    assignment[static_cast<size_t>(b)].push_back(order[static_cast<size_t>(j)]);
  }
  return Partition(num_users, std::move(assignment));
}

}  // namespace gmacfb
