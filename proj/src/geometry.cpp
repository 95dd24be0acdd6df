#include "uisim/geometry.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace uisim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kColinearTolerance = 1e-9;
constexpr double kColinearOffsetTolerance = 1e-6;

Line line_through(const Vec2& p, const Vec2& q) {
  const Vec2 d = q - p;
  const double len = d.norm();
  if (len == 0.0) throw GeometryError("degenerate segment");
  const Vec2 n{-d.y / len, d.x / len};
  return {n.x, n.y, -n.dot(p)};
}

Vec2 normalized(const Vec2& v) {
  const double len = v.norm();
  return len > 0.0 ? v * (1.0 / len) : Vec2{};
}

Vec2 left_normal(const Vec2& u) { return {-u.y, u.x}; }
Vec2 right_normal(const Vec2& u) { return {u.y, -u.x}; }

void check_lane(const IntersectionSpec& spec, const LaneRef& lane) {
  if (lane.arm < 0 || lane.arm >= spec.arm_count) {
    throw std::invalid_argument(fmt::format("arm index {} out of range", lane.arm));
  }
  const int count = lane.direction == LaneDirection::Forward ? spec.forward_lanes[lane.arm]
                                                             : spec.backward_lanes[lane.arm];
  if (lane.index < 1 || lane.index > count) {
    throw std::invalid_argument(fmt::format(
        "lane {} of arm {} does not exist ({} {} lanes)", lane.index, lane.arm, count,
        lane.direction == LaneDirection::Forward ? "forward" : "backward"));
  }
}

}  // namespace

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::optional<Vec2> intersect(const Line& l1, const Line& l2, double eps) {
  const double det = l1.a * l2.b - l2.a * l1.b;
  if (std::abs(det) < eps) return std::nullopt;
  return Vec2{(l1.b * l2.c - l2.b * l1.c) / det, (l2.a * l1.c - l1.a * l2.c) / det};
}

const char* to_string(Maneuver m) {
  switch (m) {
    case Maneuver::LeftTurn: return "left";
    case Maneuver::Straight: return "straight";
    case Maneuver::RightTurn: return "right";
  }
  return "?";
}

void IntersectionSpec::validate() const {
  if (arm_count < 3 || arm_count > 5) {
    throw std::invalid_argument(fmt::format("arm count must be 3, 4 or 5 (got {})", arm_count));
  }
  const auto n = static_cast<size_t>(arm_count);
  if (forward_lanes.size() != n || backward_lanes.size() != n || phi.size() != n) {
    throw std::invalid_argument("lane counts and arm angles must have one entry per arm");
  }
  for (size_t m = 0; m < n; ++m) {
    if (forward_lanes[m] < 0 || backward_lanes[m] < 0) {
      throw std::invalid_argument(fmt::format("arm {}: negative lane count", m));
    }
    if (forward_lanes[m] + backward_lanes[m] < 1) {
      throw std::invalid_argument(fmt::format("arm {}: needs at least one lane", m));
    }
    if (!std::isfinite(phi[m])) throw std::invalid_argument("arm angle is not finite");
  }
  if (!(lane_width > 0.0) || !std::isfinite(lane_width)) {
    throw std::invalid_argument("lane width must be positive");
  }
  double total = 0.0;
  for (size_t m = 0; m < n; ++m) {
    const double gap = wrap_two_pi(phi[(m + 1) % n] - phi[m]);
    if (gap <= kMinArmSeparation || gap >= std::numbers::pi) {
      throw std::invalid_argument(fmt::format(
          "arms {} and {} are separated by {:.4f} rad; need ({:.4f}, pi)", m, (m + 1) % n, gap,
          kMinArmSeparation));
    }
    total += gap;
  }
  if (std::abs(total - kTwoPi) > 1e-9) {
    throw std::invalid_argument("arm angles must be strictly increasing modulo 2pi");
  }
}

Line lane_line(const IntersectionSpec& spec, int arm, int k) {
  if (arm < 0 || arm >= spec.arm_count) {
    throw std::domain_error(fmt::format("arm index {} out of range", arm));
  }
  if (k < -2 * spec.backward_lanes[arm] || k > 2 * spec.forward_lanes[arm]) {
    throw std::domain_error(fmt::format("lane offset {} out of range [{}, {}] for arm {}", k,
                                        -2 * spec.backward_lanes[arm],
                                        2 * spec.forward_lanes[arm], arm));
  }
  const double phi = spec.phi[arm];
  return {std::sin(phi), -std::cos(phi), k * spec.lane_width / 2.0};
}

int lane_center_offset(const LaneRef& lane) {
  return lane.direction == LaneDirection::Forward ? 2 * lane.index - 1 : -(2 * lane.index - 1);
}

Line lane_center(const IntersectionSpec& spec, const LaneRef& lane) {
  check_lane(spec, lane);
  return lane_line(spec, lane.arm, lane_center_offset(lane));
}

Line IntersectionLayout::entrance_line(int arm) const {
  const auto& seg = entrance_lines.at(static_cast<size_t>(arm));
  return line_through(seg.from, seg.to);
}

Vec2 IntersectionLayout::entrance_point(const IntersectionSpec& spec, const LaneRef& lane) const {
  if (lane.direction != LaneDirection::Forward) {
    throw std::invalid_argument("entrance points exist only for forward lanes");
  }
  const auto p = intersect(lane_center(spec, lane), entrance_line(lane.arm));
  if (!p) throw GeometryError(fmt::format("lane center of arm {} parallel to its entrance line", lane.arm));
  return *p;
}

IntersectionLayout corners_and_entrances(const IntersectionSpec& spec) {
  spec.validate();
  const int n = spec.arm_count;
  IntersectionLayout layout;
  layout.corners.reserve(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    const int next = (m + 1) % n;
    const Line forward_boundary = lane_line(spec, m, 2 * spec.forward_lanes[m]);
    const Line backward_boundary = lane_line(spec, next, -2 * spec.backward_lanes[next]);
    const auto corner = intersect(forward_boundary, backward_boundary);
    if (!corner) {
      throw GeometryError(fmt::format("boundaries of arms {} and {} are parallel", m, next));
    }
    layout.corners.push_back(*corner);
  }
  layout.entrance_lines.reserve(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    const int prev = (m + n - 1) % n;
    layout.entrance_lines.push_back({layout.corners[prev], layout.corners[m]});
  }
  return layout;
}

double clockwise_angle(const IntersectionSpec& spec, int origin_arm, int target_arm) {
  return wrap_two_pi(spec.phi.at(origin_arm) - spec.phi.at(target_arm));
}

Maneuver classify_maneuver(const IntersectionSpec& spec, int origin_arm, int target_arm) {
  if (origin_arm == target_arm) {
    throw std::domain_error("origin and target arms coincide (U-turns are not modeled)");
  }
  const double alpha = clockwise_angle(spec, origin_arm, target_arm);
  constexpr double pi = std::numbers::pi;
  if (alpha <= 0.75 * pi) return Maneuver::LeftTurn;
  if (alpha < 1.25 * pi) return Maneuver::Straight;
  return Maneuver::RightTurn;
}

std::optional<int> violated_lane_rule(const IntersectionSpec& spec, const LaneRef& origin,
                                      const LaneRef& target) {
  if (origin.direction != LaneDirection::Forward) {
    throw std::invalid_argument("origin lane must be a forward lane");
  }
  if (target.direction != LaneDirection::Backward) {
    throw std::invalid_argument("target lane must be a backward lane");
  }
  check_lane(spec, origin);
  check_lane(spec, target);
  const int mf = spec.forward_lanes[origin.arm];
  const int mb = spec.backward_lanes[target.arm];
  switch (classify_maneuver(spec, origin.arm, target.arm)) {
    case Maneuver::LeftTurn:
      if (origin.index != 1 || target.index != 1) return 1;
      break;
    case Maneuver::RightTurn:
      if (origin.index != mf || target.index != mb) return 2;
      break;
    case Maneuver::Straight:
      if (target.index != std::min(origin.index, mb)) return 3;
      break;
  }
  return std::nullopt;
}

std::vector<LaneRef> admissible_targets(const IntersectionSpec& spec, const LaneRef& origin) {
  if (origin.direction != LaneDirection::Forward) {
    throw std::invalid_argument("origin lane must be a forward lane");
  }
  check_lane(spec, origin);
  std::vector<LaneRef> out;
  const int mf = spec.forward_lanes[origin.arm];
  for (int arm = 0; arm < spec.arm_count; ++arm) {
    if (arm == origin.arm) continue;
    const int mb = spec.backward_lanes[arm];
    if (mb == 0) continue;
    switch (classify_maneuver(spec, origin.arm, arm)) {
      case Maneuver::LeftTurn:
        if (origin.index == 1) out.push_back({arm, LaneDirection::Backward, 1});
        break;
      case Maneuver::RightTurn:
        if (origin.index == mf) out.push_back({arm, LaneDirection::Backward, mb});
        break;
      case Maneuver::Straight:
        out.push_back({arm, LaneDirection::Backward, std::min(origin.index, mb)});
        break;
    }
  }
  return out;
}

Path::Path(Vec2 initial, Vec2 entrance, Vec2 exit, Vec2 terminal, std::optional<ArcSegment> arc,
           LaneRef origin, LaneRef target, Maneuver maneuver)
    : initial_(initial),
      entrance_(entrance),
      exit_(exit),
      terminal_(terminal),
      dir_in_(normalized(entrance - initial)),
      dir_out_(normalized(terminal - exit)),
      arc_(arc),
      origin_(origin),
      target_(target),
      maneuver_(maneuver) {
  rho_en_ = (entrance - initial).norm();
  const double middle =
      arc_ ? arc_->radius * std::abs(arc_->sweep) : (exit - entrance).norm();
  rho_ex_ = rho_en_ + middle;
  rho_term_ = rho_ex_ + (terminal - exit).norm();
}

Path::Pose Path::eval(double rho) const {
  if (rho <= rho_en_) {
    return {initial_ + dir_in_ * rho, std::atan2(dir_in_.y, dir_in_.x)};
  }
  if (rho <= rho_ex_) {
    if (!arc_) {
      const Vec2 dir = normalized(exit_ - entrance_);
      return {entrance_ + dir * (rho - rho_en_), std::atan2(dir.y, dir.x)};
    }
    const double turn = arc_->sweep >= 0.0 ? 1.0 : -1.0;
    const Vec2 u = entrance_ - arc_->center;
    const double angle = std::atan2(u.y, u.x) + turn * (rho - rho_en_) / arc_->radius;
    const Vec2 point = arc_->center + Vec2{std::cos(angle), std::sin(angle)} * arc_->radius;
    const Vec2 dir{-turn * std::sin(angle), turn * std::cos(angle)};
    return {point, std::atan2(dir.y, dir.x)};
  }
  return {exit_ + dir_out_ * (rho - rho_ex_), std::atan2(dir_out_.y, dir_out_.x)};
}

Path plan_path(const IntersectionSpec& spec, const LaneRef& origin, const LaneRef& target,
               double d_init, double d_term) {
  return plan_path(spec, corners_and_entrances(spec), origin, target, d_init, d_term);
}

Path plan_path(const IntersectionSpec& spec, const IntersectionLayout& layout,
               const LaneRef& origin, const LaneRef& target, double d_init, double d_term) {
  if (!(d_init > 0.0) || !(d_term > 0.0)) {
    throw std::invalid_argument("initial and terminal distances must be positive");
  }
  if (const auto rule = violated_lane_rule(spec, origin, target)) {
    throw std::invalid_argument(fmt::format("lane rule {} violated", *rule));
  }
  const Maneuver maneuver = classify_maneuver(spec, origin.arm, target.arm);
  const Vec2 entrance = layout.entrance_point(spec, origin);
  const Vec2 dir_in = unit_from_angle(spec.phi[origin.arm]) * -1.0;
  const Vec2 dir_out = unit_from_angle(spec.phi[target.arm]);
  const Line l1 = lane_center(spec, origin);
  const Line l2 = lane_center(spec, target);
  const Vec2 initial = entrance - dir_in * d_init;

  if (std::abs(l1.a * l2.b - l2.a * l1.b) < kColinearTolerance) {
    if (std::abs(l2.signed_distance(entrance)) > kColinearOffsetTolerance) {
      throw GeometryError(fmt::format(
          "lane centers of arms {} and {} are parallel but offset by {:.3f} m", origin.arm,
          target.arm, std::abs(l2.signed_distance(entrance))));
    }
    const auto exit = intersect(l1, layout.entrance_line(target.arm));
    if (!exit) throw GeometryError("straight path does not cross the target entrance line");
    if ((*exit - entrance).dot(dir_in) <= 0.0) {
      throw GeometryError("straight path exit lies behind its entrance");
    }
    return Path(initial, entrance, *exit, *exit + dir_out * d_term, std::nullopt, origin, target,
                maneuver);
  }

  // Circle tangent to the origin center line at the entrance point and to the
  // target center line; the center sits on the turning side of both.
  const double turn = dir_in.cross(dir_out) > 0.0 ? 1.0 : -1.0;
  const Vec2 side_in = turn > 0.0 ? left_normal(dir_in) : right_normal(dir_in);
  const Vec2 side_out = turn > 0.0 ? left_normal(dir_out) : right_normal(dir_out);
  const double denom = l2.normal().dot(side_out - side_in);
  if (std::abs(denom) < kColinearTolerance) throw GeometryError("no tangent arc exists");
  const double radius = l2.signed_distance(entrance) / denom;
  if (!(radius > 0.0)) {
    throw GeometryError(fmt::format(
        "no forward tangent arc joins arm {} lane {} to arm {} lane {}", origin.arm, origin.index,
        target.arm, target.index));
  }
  const Vec2 center = entrance + side_in * radius;
  const Vec2 exit = center - side_out * radius;
  const Vec2 u = entrance - center;
  const Vec2 v = exit - center;
  const double sweep = std::atan2(std::abs(u.cross(v)), u.dot(v));
  // Nearly parallel, offset lane centers give huge radii whose arc runs far
  // down the target arm.
  const Line target_entrance = layout.entrance_line(target.arm);
  const double overshoot = (exit - target_entrance.project(exit)).dot(dir_out);
  if (overshoot > d_term) {
    throw GeometryError(fmt::format(
        "arc from arm {} lane {} to arm {} lane {} ends {:.1f} m past the intersection (radius {:.1f} m)",
        origin.arm, origin.index, target.arm, target.index, overshoot, radius));
  }
  return Path(initial, entrance, exit, exit + dir_out * d_term,
              ArcSegment{center, radius, turn * sweep}, origin, target, maneuver);
}

}  // namespace uisim
