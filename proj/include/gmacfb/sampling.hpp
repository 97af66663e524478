#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gmacfb/gaussian.hpp"

namespace gmacfb {

/// Deterministic random source. Normal variates use Box-Muller over the
/// standardized mt19937_64 output stream, so sequences are reproducible
/// across standard libraries (std::normal_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive bounds
  double normal();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Derive an independent stream seed from a base seed and an index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Random PSD covariance with the prescribed diagonal: K = D^{1/2} R D^{1/2}
/// where R = corr(A A^T) for A with i.i.d. standard normal entries and
/// D = diag(diagonal). Full rank with probability one.
Eigen::MatrixXd random_covariance_raw(Rng& rng,
                                      const std::vector<double>& diagonal);

CovarianceMatrix random_covariance(Rng& rng,
                                   const std::vector<double>& diagonal);

/// Random partition of {0..J-1} into at least two nonempty blocks.
Partition random_partition(Rng& rng, int num_users);

}  // namespace gmacfb
