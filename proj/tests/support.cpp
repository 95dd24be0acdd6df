#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace uisim::support {

IntersectionSpec four_way(int forward, int backward, double lane_width) {
  IntersectionSpec s;
  s.arm_count = 4;
  s.forward_lanes.assign(4, forward);
  s.backward_lanes.assign(4, backward);
  s.phi = {0.0, std::numbers::pi / 2.0, std::numbers::pi, 3.0 * std::numbers::pi / 2.0};
  s.lane_width = lane_width;
  return s;
}

LaneRef fwd(int arm, int lane) { return {arm, LaneDirection::Forward, lane}; }
LaneRef bwd(int arm, int lane) { return {arm, LaneDirection::Backward, lane}; }

VehicleSpec vehicle(LaneRef origin, LaneRef target, double d_entrance, double v0, DecisionModel model) {
  VehicleSpec v;
  v.origin = origin;
  v.target = target;
  v.d_entrance = d_entrance;
  v.v0 = v0;
  v.model = model;
  return v;
}

std::vector<ActionSequence> sequences_descending(const std::vector<double>& levels, int horizon) {
  std::vector<double> desc = levels;
  std::sort(desc.begin(), desc.end(), std::greater<>());
  std::vector<ActionSequence> out{{}};
  for (int tau = 0; tau < horizon; ++tau) {
    std::vector<ActionSequence> next;
    for (const auto& prefix : out) {
      for (double a : desc) {
        auto seq = prefix;
        seq.push_back(a);
        next.push_back(seq);
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

size_t first_strict_max(const std::vector<double>& values, const std::vector<bool>& allowed) {
  size_t best = values.size();
  for (size_t k = 0; k < values.size(); ++k) {
    if (!allowed[k]) continue;
    if (best == values.size() || values[k] > values[best]) best = k;
  }
  return best;
}

}  // namespace

ActionSequence brute_force_lf(const Traffic& traffic, int i, const SimParams& params) {
  const auto seqs = sequences_descending(params.limits.accelerations, params.reward.horizon);
  const auto& me = traffic.vehicles[i].state;
  const auto neighbors = perceive(traffic, i);
  const auto courteous = courteous_set(traffic, i, neighbors, params);
  std::vector<bool> allowed(seqs.size());
  for (size_t g = 0; g < seqs.size(); ++g) {
    allowed[g] = std::find(courteous.begin(), courteous.end(), seqs[g][0]) != courteous.end();
  }
  const std::vector<bool> all(seqs.size(), true);

  std::vector<double> value(seqs.size(), std::numeric_limits<double>::infinity());
  if (neighbors.empty()) {
    for (size_t g = 0; g < seqs.size(); ++g) {
      value[g] = cumulative_reward(me, nullptr, seqs[g], {}, params.reward, Role::Leader, params.limits);
    }
  }
  for (int j : neighbors) {
    const auto& other = traffic.vehicles[j].state;
    const bool leads = assign_role(traffic, i, j, params.decision.delta) == RoleRelation::Leads;
    std::vector<double> q(seqs.size());
    if (leads) {
      // The follower j secures its worst case over everything i might do.
      std::vector<double> secured(seqs.size(), std::numeric_limits<double>::infinity());
      for (size_t f = 0; f < seqs.size(); ++f) {
        for (size_t l = 0; l < seqs.size(); ++l) {
          secured[f] = std::min(secured[f], cumulative_reward(other, &me, seqs[f], seqs[l], params.reward,
                                                              Role::Follower, params.limits));
        }
      }
      const auto& reply = seqs[first_strict_max(secured, all)];
      for (size_t g = 0; g < seqs.size(); ++g) {
        q[g] = cumulative_reward(me, &other, seqs[g], reply, params.reward, Role::Leader, params.limits);
      }
    } else {
      for (size_t g = 0; g < seqs.size(); ++g) {
        q[g] = std::numeric_limits<double>::infinity();
        for (size_t l = 0; l < seqs.size(); ++l) {
          q[g] = std::min(q[g], cumulative_reward(me, &other, seqs[g], seqs[l], params.reward,
                                                  Role::Follower, params.limits));
        }
      }
    }
    for (size_t g = 0; g < seqs.size(); ++g) value[g] = std::min(value[g], q[g]);
  }
  return seqs[first_strict_max(value, allowed)];
}

namespace {

std::array<double, 4> bounds(const OrientedRect& r) {
  const auto c = r.corners();
  double lo_x = c[0].x, hi_x = c[0].x, lo_y = c[0].y, hi_y = c[0].y;
  for (const auto& p : c) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  return {lo_x, hi_x, lo_y, hi_y};
}

}  // namespace

double monte_carlo_overlap(const OrientedRect& a, const OrientedRect& b, long samples, Rng& rng,
                           double* box_area) {
  struct Frame {
    const OrientedRect& r;
    double c, s;
    Vec2 to_local(Vec2 p) const {
      const Vec2 d = p - r.center;
      return {d.x * c + d.y * s, -d.x * s + d.y * c};
    }
    Vec2 to_world(Vec2 q) const { return r.center + Vec2{q.x * c - q.y * s, q.x * s + q.y * c}; }
    bool contains(Vec2 p) const {
      const Vec2 q = to_local(p);
      return q.x >= -r.rear && q.x <= r.forward && std::abs(q.y) <= r.width / 2.0;
    }
  };
  const Frame fa{a, std::cos(a.heading), std::sin(a.heading)};
  const Frame fb{b, std::cos(b.heading), std::sin(b.heading)};

  // Sampling box: the world-axis box of both rectangles, or one rectangle
  // clipped to the other's extent along its own axes, whichever is smallest.
  struct Box {
    const Frame* frame = nullptr;  // nullptr: world axes
    double lo_x, hi_x, lo_y, hi_y;
    double area() const { return std::max(hi_x - lo_x, 0.0) * std::max(hi_y - lo_y, 0.0); }
  };
  const auto ba = bounds(a);
  const auto bb = bounds(b);
  Box best{nullptr, std::max(ba[0], bb[0]), std::min(ba[1], bb[1]), std::max(ba[2], bb[2]), std::min(ba[3], bb[3])};
  for (const auto& [own, other] : {std::pair{&fa, &b}, std::pair{&fb, &a}}) {
    Box box{own, -own->r.rear, own->r.forward, -own->r.width / 2.0, own->r.width / 2.0};
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
    for (const Vec2& p : other->corners()) {
      const Vec2 q = own->to_local(p);
      lo_x = std::min(lo_x, q.x);
      hi_x = std::max(hi_x, q.x);
      lo_y = std::min(lo_y, q.y);
      hi_y = std::max(hi_y, q.y);
    }
    box.lo_x = std::max(box.lo_x, lo_x);
    box.hi_x = std::min(box.hi_x, hi_x);
    box.lo_y = std::max(box.lo_y, lo_y);
    box.hi_y = std::min(box.hi_y, hi_y);
    if (box.area() < best.area()) best = box;
  }
  if (box_area) *box_area = best.area();
  if (best.area() == 0.0) return 0.0;
  long hits = 0;
  for (long k = 0; k < samples; ++k) {
    Vec2 p{rng.uniform(best.lo_x, best.hi_x), rng.uniform(best.lo_y, best.hi_y)};
    if (best.frame) p = best.frame->to_world(p);
    if (fa.contains(p) && fb.contains(p)) ++hits;
  }
  return best.area() * static_cast<double>(hits) / static_cast<double>(samples);
}

ActionSequence brute_force_response(const Traffic& traffic, int i,
                                    const std::vector<std::pair<VehicleState, ActionSequence>>& opponents,
                                    const SimParams& params) {
  const auto& rp = params.reward;
  const auto seqs = sequences_descending(params.limits.accelerations, rp.horizon);
  std::vector<std::vector<VehicleState>> opp_traj;
  for (const auto& [s, g] : opponents) opp_traj.push_back(predict(s, g, params.limits));
  std::vector<double> value(seqs.size());
  for (size_t g = 0; g < seqs.size(); ++g) {
    const auto own = predict(traffic.vehicles[i].state, seqs[g], params.limits);
    double total = 0.0;
    double weight = 1.0;
    for (int tau = 0; tau < rp.horizon; ++tau) {
      double stage = 0.0;
      for (const auto& traj : opp_traj) {
        const auto& o = traj[tau];
        const double s_c = overlap_area(zone_rect(own[tau], rp.c_zone), zone_rect(o, rp.c_zone));
        const double s_s = overlap_area(zone_rect(own[tau], rp.s_zone_level_k), zone_rect(o, rp.s_zone_level_k));
        stage += rp.w_collision * overlap_penalty(s_c, own[tau].v, o.v, rp.w_hat) +
                 rp.w_separation * overlap_penalty(s_s, own[tau].v, o.v, rp.w_hat);
      }
      stage += rp.w_speed * own[tau].v;
      total += weight * stage;
      weight *= rp.discount;
    }
    value[g] = total;
  }
  const auto courteous = courteous_set(traffic, i, perceive(traffic, i), params);
  std::vector<bool> allowed(seqs.size());
  for (size_t g = 0; g < seqs.size(); ++g) {
    allowed[g] = std::find(courteous.begin(), courteous.end(), seqs[g][0]) != courteous.end();
  }
  return seqs[first_strict_max(value, allowed)];
}

ScenarioSpec sample_until_valid(int arms, int vehicles, Rng& rng, const SimParams& params) {
  for (;;) {
    try {
      return sample_scenario(arms, vehicles, rng, params);
    } catch (const GenerationError&) {
    }
  }
}

std::vector<Traffic> random_pair_states(int count, std::uint64_t seed, const SimParams& params) {
  Rng rng(seed);
  std::vector<Traffic> out;
  while (static_cast<int>(out.size()) < count) {
    const int arms = 3 + static_cast<int>(rng.below(3));
    ScenarioSpec s;
    s.intersection = sample_intersection(arms, rng, params.randomization);
    try {
      s.vehicles = sample_vehicles(s.intersection, 2, rng, params);
    } catch (const GenerationError&) {
      continue;
    }
    Traffic t;
    try {
      t = build_world(s, params);
    } catch (const ValidationError&) {
      continue;
    }
    for (auto& v : t.vehicles) {
      const double rho = rng.uniform(0.0, v.path->rho_exit());
      const double speed = static_cast<double>(rng.below(6));
      v.state = make_state(*v.path, rho, speed);
    }
    const auto& a = t.vehicles[0].state;
    const auto& b = t.vehicles[1].state;
    if ((a.position() - b.position()).norm() > params.decision.perception_range) continue;
    if (!colliding_pairs(t, params).empty()) continue;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace uisim::support
