#include "uisim/kinematics.hpp"

#include <algorithm>
#include <tuple>

namespace uisim {

void MotionLimits::validate() const {
  if (!(v_min <= v_max)) throw std::invalid_argument("v_min must not exceed v_max");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (accelerations.empty()) throw std::invalid_argument("acceleration set is empty");
  if (!std::is_sorted(accelerations.begin(), accelerations.end()) ||
      std::adjacent_find(accelerations.begin(), accelerations.end()) != accelerations.end()) {
    throw std::invalid_argument("acceleration set must be strictly ascending");
  }
  if (std::find(accelerations.begin(), accelerations.end(), 0.0) == accelerations.end()) {
    throw std::invalid_argument("acceleration set must contain 0");
  }
}

VehicleState make_state(const Path& path, double rho, double v) {
  const auto pose = path.eval(rho);
  VehicleState s;
  s.path = &path;
  s.rho = rho;
  s.v = v;
  s.x = pose.point.x;
  s.y = pose.point.y;
  s.theta = pose.heading;
  s.d_entrance = path.rho_entrance() - rho;
  s.d_exit = path.rho_exit() - rho;
  return s;
}

VehicleState advance(const VehicleState& s, double a, const MotionLimits& limits) {
  const double rho = s.rho + s.v * limits.dt;
  const double v = std::clamp(s.v + a * limits.dt, limits.v_min, limits.v_max);
  return make_state(*s.path, rho, v);
}

std::vector<VehicleState> predict(const VehicleState& s, std::span<const double> accelerations,
                                  const MotionLimits& limits) {
  std::vector<VehicleState> out;
  out.reserve(accelerations.size());
  VehicleState cur = s;
  for (double a : accelerations) {
    cur = advance(cur, a, limits);
    out.push_back(cur);
  }
  return out;
}

std::array<Vec2, 4> OrientedRect::corners() const {
  const Vec2 h{std::cos(heading), std::sin(heading)};
  const Vec2 n{-h.y, h.x};
  const double half = width / 2.0;
  return {center - h * rear - n * half, center + h * forward - n * half,
          center + h * forward + n * half, center - h * rear + n * half};
}

double OrientedRect::reach() const {
  const double along = std::max(forward, rear);
  return std::hypot(along, width / 2.0);
}

OrientedRect zone_rect(Vec2 position, double heading, const ZoneDims& dims) {
  return {position, heading, dims.forward, dims.rear, dims.width};
}

OrientedRect zone_rect(const VehicleState& s, const ZoneDims& dims) {
  return zone_rect(s.position(), s.theta, dims);
}

double polygon_area(std::span<const Vec2> polygon) {
  double twice = 0.0;
  for (size_t i = 0, n = polygon.size(); i < n; ++i) {
    twice += polygon[i].cross(polygon[(i + 1) % n]);
  }
  return 0.5 * twice;
}

double convex_overlap_area(std::span<const Vec2> p, std::span<const Vec2> q) {
  // Sutherland-Hodgman: clip p against every edge of q.
  std::vector<Vec2> current(p.begin(), p.end());
  std::vector<Vec2> next;
  next.reserve(current.size() + q.size());
  for (size_t e = 0; e < q.size() && !current.empty(); ++e) {
    const Vec2 a = q[e];
    const Vec2 edge = q[(e + 1) % q.size()] - a;
    auto side = [&](const Vec2& pt) { return edge.cross(pt - a); };
    next.clear();
    for (size_t i = 0; i < current.size(); ++i) {
      const Vec2& s = current[i];
      const Vec2& t = current[(i + 1) % current.size()];
      const double ds = side(s);
      const double dt = side(t);
      if (ds >= 0.0) next.push_back(s);
      if ((ds >= 0.0) != (dt >= 0.0)) {
        const double f = ds / (ds - dt);
        next.push_back(s + (t - s) * f);
      }
    }
    current.swap(next);
  }
  if (current.size() < 3) return 0.0;
  const double area = polygon_area(current);
  // Clipping round-off on touching edges.
  return area > 1e-12 ? area : 0.0;
}

double overlap_area(const OrientedRect& r1, const OrientedRect& r2) {
  const double dist = (r1.center - r2.center).norm();
  if (dist >= r1.reach() + r2.reach()) return 0.0;
  // Canonical argument order makes the result bitwise symmetric.
  auto key = [](const OrientedRect& r) {
    return std::tie(r.center.x, r.center.y, r.heading, r.forward, r.rear, r.width);
  };
  const bool swap = key(r2) < key(r1);
  const OrientedRect& first = swap ? r2 : r1;
  const OrientedRect& second = swap ? r1 : r2;
  const auto a = first.corners();
  const auto b = second.corners();
  return convex_overlap_area(a, b);
}

}  // namespace uisim
