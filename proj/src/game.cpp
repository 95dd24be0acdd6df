#include "uisim/game.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace uisim {

ActionSpace::ActionSpace(std::vector<double> ascending_levels, int horizon)
    : descending_(std::move(ascending_levels)), horizon_(horizon) {
  if (descending_.empty()) throw std::invalid_argument("empty acceleration set");
  if (horizon_ < 1) throw std::invalid_argument("horizon must be at least 1");
  std::sort(descending_.begin(), descending_.end(), std::greater<>());
  place_.assign(static_cast<size_t>(horizon_), 1);
  for (int tau = horizon_ - 2; tau >= 0; --tau) {
    place_[tau] = place_[tau + 1] * descending_.size();
  }
  size_ = place_[0] * descending_.size();
}

size_t ActionSpace::digit(ActionIndex g, int tau) const {
  return (g / place_[static_cast<size_t>(tau)]) % descending_.size();
}

ActionSequence ActionSpace::sequence(ActionIndex g) const {
  ActionSequence seq(static_cast<size_t>(horizon_));
  for (int tau = 0; tau < horizon_; ++tau) seq[tau] = accel(g, tau);
  return seq;
}

size_t ActionSpace::level_digit(double a) const {
  for (size_t d = 0; d < descending_.size(); ++d) {
    if (descending_[d] == a) return d;
  }
  throw std::invalid_argument(fmt::format("acceleration {} is not in the action set", a));
}

ActionIndex ActionSpace::index_of(std::span<const double> seq) const {
  if (seq.size() != static_cast<size_t>(horizon_)) {
    throw std::invalid_argument("sequence length differs from the horizon");
  }
  size_t g = 0;
  for (int tau = 0; tau < horizon_; ++tau) g += level_digit(seq[tau]) * place_[tau];
  return static_cast<ActionIndex>(g);
}

size_t ActionSpace::position_prefix(ActionIndex g, int tau) const {
  // The position after tau steps depends on the first tau-1 accelerations.
  if (tau <= 1) return 0;
  return g / place_[static_cast<size_t>(tau - 2)];
}

size_t ActionSpace::position_prefix_count(int tau) const {
  size_t count = 1;
  for (int k = 1; k < tau; ++k) count *= descending_.size();
  return count;
}

RewardTable::RewardTable(size_t r, size_t c, std::vector<double> v)
    : rows(r), cols(c), values(std::move(v)) {
  if (values.size() != rows * cols) throw std::invalid_argument("reward table shape mismatch");
}

size_t preferred_argmax(std::span<const double> values, std::span<const char> allowed) {
  size_t best = values.size();
  for (size_t k = 0; k < values.size(); ++k) {
    if (!allowed.empty() && !allowed[k]) continue;
    if (best == values.size() || values[k] > values[best]) best = k;
  }
  if (best == values.size()) throw std::invalid_argument("no admissible action");
  return best;
}

std::vector<double> secured_values(const RewardTable& own) {
  std::vector<double> out(own.rows, std::numeric_limits<double>::infinity());
  for (size_t r = 0; r < own.rows; ++r) {
    for (size_t c = 0; c < own.cols; ++c) out[r] = std::min(out[r], own.at(r, c));
  }
  return out;
}

std::vector<double> leader_values(const RewardTable& leader, const RewardTable& follower) {
  if (leader.cols != follower.rows || leader.rows != follower.cols) {
    throw std::invalid_argument("leader and follower tables disagree on action counts");
  }
  const size_t reply = preferred_argmax(secured_values(follower));
  std::vector<double> out(leader.rows);
  for (size_t r = 0; r < leader.rows; ++r) out[r] = leader.at(r, reply);
  return out;
}

}  // namespace uisim
