#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace uisim {

using ActionSequence = std::vector<double>;
using ActionIndex = std::uint32_t;

/// Enumerates Gamma = A^N in tie-break order: index 0 is the lexicographically
/// largest acceleration sequence, so scanning indices upward and keeping the
/// first strict maximum prefers the larger first acceleration, then the larger
/// second, and so on.
class ActionSpace {
 public:
  ActionSpace(std::vector<double> ascending_levels, int horizon);

  size_t size() const { return size_; }
  int horizon() const { return horizon_; }
  size_t level_count() const { return descending_.size(); }

  /// Position of step tau's acceleration (0 = largest level).
  size_t digit(ActionIndex g, int tau) const;
  double accel(ActionIndex g, int tau) const { return descending_[digit(g, tau)]; }
  double first(ActionIndex g) const { return accel(g, 0); }
  ActionSequence sequence(ActionIndex g) const;
  ActionIndex index_of(std::span<const double> seq) const;
  /// Index of the descending level list holding acceleration a.
  size_t level_digit(double a) const;

  /// Identifier of the acceleration prefix that fixes the position at
  /// predicted step tau (1-based); there are |A|^(tau-1) of them.
  size_t position_prefix(ActionIndex g, int tau) const;
  size_t position_prefix_count(int tau) const;

  const std::vector<double>& levels_descending() const { return descending_; }

 private:
  std::vector<double> descending_;
  int horizon_;
  size_t size_;
  std::vector<size_t> place_;  // |A|^(N-1-tau)
};

/// Row-major reward matrix: rows are the evaluating player's actions.
struct RewardTable {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> values;

  RewardTable() = default;
  RewardTable(size_t r, size_t c) : rows(r), cols(c), values(r * c, 0.0) {}
  RewardTable(size_t r, size_t c, std::vector<double> v);
  double& at(size_t r, size_t c) { return values[r * cols + c]; }
  double at(size_t r, size_t c) const { return values[r * cols + c]; }
};

/// First index attaining the strict maximum among allowed entries.
/// An empty mask allows every entry.
size_t preferred_argmax(std::span<const double> values, std::span<const char> allowed = {});

/// Worst case over the opponent for each own action (the maximin values).
std::vector<double> secured_values(const RewardTable& own);

/// Leader's predicted rewards: `leader` rows are leader actions and columns
/// follower actions; `follower` rows are follower actions and columns leader
/// actions. The follower is assumed to play its maximin action.
std::vector<double> leader_values(const RewardTable& leader, const RewardTable& follower);

}  // namespace uisim
