#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uisim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 unit_from_angle(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Wraps an angle into [0, 2pi).
double wrap_two_pi(double angle);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normalized line a*x + b*y + c = 0 with a^2 + b^2 = 1.
struct Line {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double signed_distance(const Vec2& p) const { return a * p.x + b * p.y + c; }
  Vec2 normal() const { return {a, b}; }
  /// Foot of the perpendicular from p.
  Vec2 project(const Vec2& p) const { return p - normal() * signed_distance(p); }
};

/// Intersection point of two lines; nullopt when (near) parallel.
std::optional<Vec2> intersect(const Line& l1, const Line& l2, double eps = 1e-12);

/// Layout of an intersection: arms are indexed 0..N-1 in counter-clockwise
/// angular order. Arm m points from the intersection center outward at
/// angle `phi[m]`.
struct IntersectionSpec {
  int arm_count = 0;
  std::vector<int> forward_lanes;
  std::vector<int> backward_lanes;
  std::vector<double> phi;
  double lane_width = 4.0;

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
  bool operator==(const IntersectionSpec&) const = default;
};

/// Minimum counter-clockwise gap between consecutive arms.
inline constexpr double kMinArmSeparation = std::numbers::pi / 8.0;

enum class LaneDirection { Forward, Backward };

/// `index` is 1-based from the left of its direction group.
struct LaneRef {
  int arm = 0;
  LaneDirection direction = LaneDirection::Forward;
  int index = 1;
  bool operator==(const LaneRef&) const = default;
};

enum class Maneuver { LeftTurn, Straight, RightTurn };

const char* to_string(Maneuver m);

/// Lane marking / boundary / lane center of arm m at integer offset k.
/// Forward lanes occupy 0 < k <= 2*M_f, backward lanes -2*M_b <= k < 0.
Line lane_line(const IntersectionSpec& spec, int arm, int k);

/// Offset k of a lane's center line.
int lane_center_offset(const LaneRef& lane);

Line lane_center(const IntersectionSpec& spec, const LaneRef& lane);

struct Segment {
  Vec2 from;
  Vec2 to;
};

struct IntersectionLayout {
  /// corners[m] sits between arm m and arm m+1 (mod N).
  std::vector<Vec2> corners;
  /// entrance_lines[m] joins corners[m-1] and corners[m].
  std::vector<Segment> entrance_lines;

  Vec2 entrance_point(const IntersectionSpec& spec, const LaneRef& lane) const;
  Line entrance_line(int arm) const;
};

IntersectionLayout corners_and_entrances(const IntersectionSpec& spec);

/// Clockwise angle in (0, 2pi) from the origin arm to the target arm.
double clockwise_angle(const IntersectionSpec& spec, int origin_arm, int target_arm);

Maneuver classify_maneuver(const IntersectionSpec& spec, int origin_arm, int target_arm);

/// Which lane-assignment rule (1 = left turn, 2 = right turn, 3 = straight)
/// a pair violates; nullopt when admissible.
std::optional<int> violated_lane_rule(const IntersectionSpec& spec, const LaneRef& origin,
                                      const LaneRef& target);

std::vector<LaneRef> admissible_targets(const IntersectionSpec& spec, const LaneRef& origin);

struct ArcSegment {
  Vec2 center;
  double radius = 0.0;
  /// Signed sweep: positive is counter-clockwise.
  double sweep = 0.0;
};

/// Line-arc-line path parameterized by arc length. The arc is absent for
/// paths whose lane centers are colinear.
class Path {
 public:
  struct Pose {
    Vec2 point;
    double heading = 0.0;
  };

  Path(Vec2 initial, Vec2 entrance, Vec2 exit, Vec2 terminal, std::optional<ArcSegment> arc,
       LaneRef origin, LaneRef target, Maneuver maneuver);

  Pose eval(double rho) const;

  double rho_entrance() const { return rho_en_; }
  double rho_exit() const { return rho_ex_; }
  double rho_terminal() const { return rho_term_; }
  const std::optional<ArcSegment>& arc() const { return arc_; }
  Vec2 initial_point() const { return initial_; }
  Vec2 entrance_point() const { return entrance_; }
  Vec2 exit_point() const { return exit_; }
  Vec2 terminal_point() const { return terminal_; }
  const LaneRef& origin() const { return origin_; }
  const LaneRef& target() const { return target_; }
  Maneuver maneuver() const { return maneuver_; }

 private:
  Vec2 initial_, entrance_, exit_, terminal_;
  Vec2 dir_in_, dir_out_;
  std::optional<ArcSegment> arc_;
  LaneRef origin_, target_;
  Maneuver maneuver_;
  double rho_en_ = 0.0, rho_ex_ = 0.0, rho_term_ = 0.0;
};

Path plan_path(const IntersectionSpec& spec, const LaneRef& origin, const LaneRef& target,
               double d_init, double d_term);

/// Same as plan_path but reuses a precomputed layout.
Path plan_path(const IntersectionSpec& spec, const IntersectionLayout& layout,
               const LaneRef& origin, const LaneRef& target, double d_init, double d_term);

}  // namespace uisim
