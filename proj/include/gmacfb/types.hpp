#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gmacfb {

enum class Unit { nats, bits };

/// Nonnegative information rate tagged with its unit (1 bit = ln 2 nats).
struct RateValue {
  double value = 0.0;
  Unit unit = Unit::nats;
};

RateValue convert_rate(RateValue r, Unit target);

/// Value of `r` expressed in nats.
double as_nats(const RateValue& r);

std::string unit_name(Unit u);

/// J-user additive-noise channel Y = sum_j X_j + Z with unit-variance noise.
/// Channel gains are folded into the power limits (P_j <- g_j^2 P_j), so the
/// config carries normalized gains only.
struct ChannelConfig {
  int num_users = 0;
  std::vector<double> powers;
  static constexpr double noise_variance = 1.0;

  ChannelConfig(int users, std::vector<double> power_limits);
  static ChannelConfig symmetric(int users, double power);
};

/// Disjoint nonempty index blocks covering {0..J-1}, with at least two blocks.
class Partition {
 public:
  Partition(int num_users, std::vector<std::vector<int>> blocks);
  static Partition singletons(int num_users);

  int num_users() const { return num_users_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  /// Indices of {0..J-1} not in `blocks()[m]`, ascending.
  std::vector<int> complement(int m) const;

 private:
  int num_users_;
  std::vector<std::vector<int>> blocks_;
};

/// A covariance construction or validation found a negative eigenvalue.
class PsdError : public std::domain_error {
 public:
  PsdError(const std::string& message, double min_eigenvalue)
      : std::domain_error(message), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

}  // namespace gmacfb
