#pragma once

#include <string>
#include <vector>

#include "uisim/engine.hpp"
#include "uisim/levelk.hpp"
#include "uisim/scenario.hpp"

namespace uisim::support {

inline std::string fixture(const std::string& name) { return std::string(UISIM_FIXTURE_DIR) + "/" + name; }

/// Four arms at 0, pi/2, pi, 3pi/2 with the same lane counts on every arm.
IntersectionSpec four_way(int forward, int backward, double lane_width = 4.0);

LaneRef fwd(int arm, int lane = 1);
LaneRef bwd(int arm, int lane = 1);

VehicleSpec vehicle(LaneRef origin, LaneRef target, double d_entrance, double v0,
                    DecisionModel model = {});

/// Every sequence of A^N, lexicographically largest first, built by nested
/// enumeration without ActionSpace.
std::vector<ActionSequence> sequences_descending(const std::vector<double>& levels, int horizon);

/// Pairwise leader-follower decision of vehicle i computed straight from
/// cumulative_reward over the full table.
ActionSequence brute_force_lf(const Traffic& traffic, int i, const SimParams& params);

/// Monte Carlo estimate of the overlap area from point-membership tests,
/// sampling the smallest of three boxes known to contain the overlap.
/// `box_area`, when given, receives the area of that box.
double monte_carlo_overlap(const OrientedRect& a, const OrientedRect& b, long samples, Rng& rng,
                           double* box_area = nullptr);

/// Best response of i (level-k zones, courteous first actions) to fixed
/// opponent trajectories, each given as a start state and an acceleration
/// sequence.
ActionSequence brute_force_response(const Traffic& traffic, int i,
                                    const std::vector<std::pair<VehicleState, ActionSequence>>& opponents,
                                    const SimParams& params);

/// sample_scenario, redrawn on GenerationError.
ScenarioSpec sample_until_valid(int arms, int vehicles, Rng& rng, const SimParams& params);

/// Random two-vehicle states on random intersections with both vehicles
/// inside each other's perception range.
std::vector<Traffic> random_pair_states(int count, std::uint64_t seed, const SimParams& params);

}  // namespace uisim::support
