#include "uisim/levelk.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace uisim {

Trajectory frozen_trajectory(const VehicleState& s, const ActionSpace& space, const MotionLimits& limits) {
  VehicleState held = s;
  held.v = 0.0;
  const std::vector<double> zeros(static_cast<size_t>(space.horizon()), 0.0);
  MotionLimits stopped = limits;
  stopped.v_min = 0.0;
  stopped.v_max = 0.0;
  return predict(held, zeros, stopped);
}

double multi_cumulative_reward(std::span<const VehicleState> own, std::span<const Trajectory> opponents,
                               std::span<const double> weights, const RewardParams& p) {
  const ZoneDims& sz = p.separation_zone(Role::LevelK);
  double total = 0.0;
  for (size_t tau = 0; tau < own.size(); ++tau) {
    double stage = 0.0;
    for (const auto& opp : opponents) {
      const double s_c = overlap_area(zone_rect(own[tau], p.c_zone), zone_rect(opp[tau], p.c_zone));
      const double s_s = overlap_area(zone_rect(own[tau], sz), zone_rect(opp[tau], sz));
      stage += p.w_collision * overlap_penalty(s_c, own[tau].v, opp[tau].v, p.w_hat) +
               p.w_separation * overlap_penalty(s_s, own[tau].v, opp[tau].v, p.w_hat);
    }
    stage += p.w_speed * own[tau].v;
    total += weights[tau] * stage;
  }
  return total;
}

namespace {

/// Overlaps of i's zone against one opponent trajectory, keyed [tau][prefix].
struct OpponentOverlaps {
  const Trajectory* traj = nullptr;
  std::vector<std::vector<double>> c;
  std::vector<std::vector<double>> s;
};

OpponentOverlaps overlaps_against(const StepContext& ctx, int i, const Trajectory& opp) {
  const auto& space = ctx.space();
  const auto& p = ctx.params().reward;
  const ZoneDims& sz = p.separation_zone(Role::LevelK);
  OpponentOverlaps out;
  out.traj = &opp;
  out.c.resize(static_cast<size_t>(space.horizon()));
  out.s.resize(static_cast<size_t>(space.horizon()));
  for (int tau = 1; tau <= space.horizon(); ++tau) {
    const size_t count = space.position_prefix_count(tau);
    const size_t stride = space.size() / count;
    out.c[tau - 1].resize(count);
    out.s[tau - 1].resize(count);
    for (size_t prefix = 0; prefix < count; ++prefix) {
      const auto& own = ctx.trajectory(i, static_cast<ActionIndex>(prefix * stride))[tau - 1];
      out.c[tau - 1][prefix] = overlap_area(zone_rect(own, p.c_zone), zone_rect(opp[tau - 1], p.c_zone));
      out.s[tau - 1][prefix] = overlap_area(zone_rect(own, sz), zone_rect(opp[tau - 1], sz));
    }
  }
  return out;
}

/// Same arithmetic as multi_cumulative_reward, reading cached overlaps.
double cached_reward(const StepContext& ctx, int i, ActionIndex g, std::span<const OpponentOverlaps* const> opps) {
  const auto& space = ctx.space();
  const auto& p = ctx.params().reward;
  const auto& w = ctx.weights();
  const auto& own = ctx.trajectory(i, g);
  double total = 0.0;
  for (int tau = 1; tau <= space.horizon(); ++tau) {
    const size_t prefix = space.position_prefix(g, tau);
    const double v = own[tau - 1].v;
    double stage = 0.0;
    for (const OpponentOverlaps* o : opps) {
      const double vj = (*o->traj)[tau - 1].v;
      stage += p.w_collision * overlap_penalty(o->c[tau - 1][prefix], v, vj, p.w_hat) +
               p.w_separation * overlap_penalty(o->s[tau - 1][prefix], v, vj, p.w_hat);
    }
    stage += p.w_speed * v;
    total += w[tau - 1] * stage;
  }
  return total;
}

ActionIndex best_response(const StepContext& ctx, int i, std::span<const Trajectory* const> opponents) {
  return static_cast<ActionIndex>(preferred_argmax(multi_values(ctx, i, opponents), ctx.sequence_mask(i)));
}

std::vector<Trajectory> frozen_neighbors(const StepContext& ctx, int i) {
  std::vector<Trajectory> out;
  for (int j : ctx.neighbors(i)) {
    out.push_back(frozen_trajectory(ctx.traffic().vehicles[j].state, ctx.space(), ctx.params().limits));
  }
  return out;
}

ActionIndex level_zero(const StepContext& ctx, int i) {
  const auto frozen = frozen_neighbors(ctx, i);
  std::vector<const Trajectory*> ptrs;
  for (const auto& f : frozen) ptrs.push_back(&f);
  return best_response(ctx, i, ptrs);
}

void check_level(int k, int k_max) {
  if (k < 0 || k > k_max) {
    throw std::domain_error(fmt::format("level {} outside 0..{}", k, k_max));
  }
}

}  // namespace

std::vector<double> multi_values(const StepContext& ctx, int i, std::span<const Trajectory* const> opponents) {
  std::vector<OpponentOverlaps> cache;
  cache.reserve(opponents.size());
  for (const Trajectory* t : opponents) cache.push_back(overlaps_against(ctx, i, *t));
  std::vector<const OpponentOverlaps*> ptrs;
  for (const auto& c : cache) ptrs.push_back(&c);
  std::vector<double> out(ctx.space().size());
  for (ActionIndex g = 0; g < out.size(); ++g) out[g] = cached_reward(ctx, i, g, ptrs);
  return out;
}

ActionIndex LevelKTable::at(int k, int id) const {
  check_level(k, k_max());
  return decisions[k][id];
}

LevelKTable compute_levelk_table(const StepContext& ctx, int k_max, Execution policy) {
  if (k_max < 0) throw std::domain_error("k_max must be non-negative");
  const auto& vehicles = ctx.traffic().vehicles;
  const int n = static_cast<int>(vehicles.size());
  LevelKTable table;
  table.decisions.assign(static_cast<size_t>(k_max + 1), std::vector<ActionIndex>(vehicles.size(), 0));
  for (int k = 0; k <= k_max; ++k) {
    for_each_index(policy, n, [&](int i) {
      if (!vehicles[i].active) return;
      if (k == 0) {
        table.decisions[0][i] = level_zero(ctx, i);
        return;
      }
      std::vector<const Trajectory*> opps;
      for (int j : ctx.neighbors(i)) opps.push_back(&ctx.trajectory(j, table.decisions[k - 1][j]));
      table.decisions[k][i] = best_response(ctx, i, opps);
    });
  }
  return table;
}

ActionIndex levelk_decision(const LevelKTable& table, int i, int k) { return table.at(k, i); }

ActionIndex levelk_decision_direct(const StepContext& ctx, int i, int k) {
  check_level(k, ctx.params().level_k.k_max);
  if (k == 0) return level_zero(ctx, i);
  std::vector<const Trajectory*> opps;
  for (int j : ctx.neighbors(i)) opps.push_back(&ctx.trajectory(j, levelk_decision_direct(ctx, j, k - 1)));
  return best_response(ctx, i, opps);
}

std::vector<double> uniform_belief(int k_max) {
  return std::vector<double>(static_cast<size_t>(k_max + 1), 1.0 / (k_max + 1));
}

std::vector<double> adaptive_values(const StepContext& ctx, const LevelKTable& table, int i,
                                    const std::vector<std::vector<double>>& beliefs, int cap) {
  const auto& vehicles = ctx.traffic().vehicles;
  const int levels = table.k_max() + 1;
  std::vector<int> near = ctx.neighbors(i);
  const Vec2 me = vehicles[i].state.position();
  std::stable_sort(near.begin(), near.end(), [&](int a, int b) {
    return (vehicles[a].state.position() - me).norm() < (vehicles[b].state.position() - me).norm();
  });
  auto belief_of = [&](int j) -> std::vector<double> {
    if (static_cast<size_t>(j) < beliefs.size() && beliefs[j].size() == static_cast<size_t>(levels)) return beliefs[j];
    return uniform_belief(table.k_max());
  };

  const size_t summed = std::min(near.size(), static_cast<size_t>(std::max(cap, 0)));
  // overlaps[m][k]: opponent m (distance order) playing level k.
  std::vector<std::vector<OpponentOverlaps>> overlaps(near.size());
  std::vector<std::vector<double>> probs(near.size());
  for (size_t m = 0; m < near.size(); ++m) {
    const int j = near[m];
    probs[m] = belief_of(j);
    if (m < summed) {
      for (int k = 0; k < levels; ++k) {
        overlaps[m].push_back(overlaps_against(ctx, i, ctx.trajectory(j, table.decisions[k][j])));
      }
    } else {
      const int k = static_cast<int>(preferred_argmax(probs[m]));
      overlaps[m].push_back(overlaps_against(ctx, i, ctx.trajectory(j, table.decisions[k][j])));
    }
  }

  std::vector<double> out(ctx.space().size(), 0.0);
  size_t combos = 1;
  for (size_t m = 0; m < summed; ++m) combos *= static_cast<size_t>(levels);
  std::vector<const OpponentOverlaps*> chosen(near.size());
  for (size_t m = summed; m < near.size(); ++m) chosen[m] = &overlaps[m][0];
  for (size_t combo = 0; combo < combos; ++combo) {
    double prob = 1.0;
    size_t rest = combo;
    for (size_t m = summed; m-- > 0;) {
      const size_t k = rest % static_cast<size_t>(levels);
      rest /= static_cast<size_t>(levels);
      prob *= probs[m][k];
      chosen[m] = &overlaps[m][k];
    }
    if (prob == 0.0) continue;
    for (ActionIndex g = 0; g < out.size(); ++g) out[g] += prob * cached_reward(ctx, i, g, chosen);
  }
  return out;
}

ActionIndex adaptive_decision(const StepContext& ctx, const LevelKTable& table, int i,
                              const std::vector<std::vector<double>>& beliefs, int cap) {
  return static_cast<ActionIndex>(
      preferred_argmax(adaptive_values(ctx, table, i, beliefs, cap), ctx.sequence_mask(i)));
}

std::vector<double> update_belief(std::span<const double> prior, std::span<const double> predicted,
                                  double observed, double step) {
  if (prior.size() != predicted.size()) throw std::invalid_argument("belief and prediction sizes differ");
  std::vector<double> out(prior.begin(), prior.end());
  if (std::adjacent_find(predicted.begin(), predicted.end(), std::not_equal_to<>()) == predicted.end()) {
    return out;
  }
  size_t best = 0;
  for (size_t k = 1; k < predicted.size(); ++k) {
    if (std::abs(predicted[k] - observed) < std::abs(predicted[best] - observed)) best = k;
  }
  out[best] += step;
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& p : out) p /= sum;
  return out;
}

}  // namespace uisim
