#include "gmacfb/types.hpp"

#include <algorithm>
#include <cmath>

namespace gmacfb {

RateValue convert_rate(RateValue r, Unit target) {
  if (r.unit == target) return r;
  const double ln2 = std::log(2.0);
  double value = (target == Unit::bits) ? r.value / ln2 : r.value * ln2;
  return RateValue{value, target};
}

double as_nats(const RateValue& r) { return convert_rate(r, Unit::nats).value; }

std::string unit_name(Unit u) { return u == Unit::nats ? "nats" : "bits"; }

ChannelConfig::ChannelConfig(int users, std::vector<double> power_limits)
    : num_users(users), powers(std::move(power_limits)) {
  if (num_users < 2)
    throw std::invalid_argument("ChannelConfig: need at least two users");
  if (static_cast<int>(powers.size()) != num_users)
    throw std::invalid_argument("ChannelConfig: one power limit per user");
  for (double p : powers)
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::invalid_argument("ChannelConfig: power limits must be positive");
}

ChannelConfig ChannelConfig::symmetric(int users, double power) {
  return ChannelConfig(users, std::vector<double>(static_cast<size_t>(std::max(users, 0)), power));
}

Partition::Partition(int num_users, std::vector<std::vector<int>> blocks)
    : num_users_(num_users), blocks_(std::move(blocks)) {
  if (num_users_ < 2) throw std::invalid_argument("Partition: need J >= 2");
  if (blocks_.size() < 2)
    throw std::invalid_argument("Partition: need at least two blocks");
  std::vector<bool> seen(static_cast<size_t>(num_users_), false);
  int covered = 0;
  for (auto& block : blocks_) {
    if (block.empty()) throw std::invalid_argument("Partition: empty block");
    std::sort(block.begin(), block.end());
    for (int j : block) {
      if (j < 0 || j >= num_users_)
        throw std::invalid_argument("Partition: index out of range");
      if (seen[static_cast<size_t>(j)])
        throw std::invalid_argument("Partition: blocks must be disjoint");
      seen[static_cast<size_t>(j)] = true;
      ++covered;
    }
  }
  if (covered != num_users_)
    throw std::invalid_argument("Partition: blocks must cover every user");
}

Partition Partition::singletons(int num_users) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(std::max(num_users, 0)));
  for (int j = 0; j < num_users; ++j) blocks.push_back({j});
  return Partition(num_users, std::move(blocks));
}

std::vector<int> Partition::complement(int m) const {
  const auto& block = blocks_.at(static_cast<size_t>(m));
  std::vector<int> out;
  out.reserve(static_cast<size_t>(num_users_) - block.size());
  size_t pos = 0;
  for (int j = 0; j < num_users_; ++j) {
    if (pos < block.size() && block[pos] == j) {
      ++pos;
      continue;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace gmacfb
