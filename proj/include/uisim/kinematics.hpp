#pragma once

#include <array>
#include <span>
#include <vector>

#include "uisim/geometry.hpp"

namespace uisim {

struct MotionLimits {
  double v_min = 0.0;
  double v_max = 5.0;
  double dt = 1.0;
  /// Acceleration levels, sorted ascending, containing 0.
  std::vector<double> accelerations{-4.0, -2.0, 0.0, 2.0};

  void validate() const;
  double min_acceleration() const { return accelerations.front(); }
};

/// State of a vehicle following its pre-planned path.
struct VehicleState {
  const Path* path = nullptr;
  double rho = 0.0;
  double v = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double d_entrance = 0.0;  // rho_en - rho
  double d_exit = 0.0;      // rho_ex - rho

  Vec2 position() const { return {x, y}; }
  bool entered() const { return d_entrance <= 0.0; }
};

VehicleState make_state(const Path& path, double rho, double v);

VehicleState advance(const VehicleState& s, double a, const MotionLimits& limits);

/// States s(1|t) .. s(N|t) under the acceleration sequence.
std::vector<VehicleState> predict(const VehicleState& s, std::span<const double> accelerations,
                                  const MotionLimits& limits);

/// Rectangle sharing the vehicle's longitudinal axis, reaching `forward`
/// meters ahead of and `rear` meters behind the reference point.
struct OrientedRect {
  Vec2 center;
  double heading = 0.0;
  double forward = 0.0;
  double rear = 0.0;
  double width = 0.0;

  std::array<Vec2, 4> corners() const;
  double area() const { return (forward + rear) * width; }
  /// Radius of the smallest circle about `center` containing the rectangle.
  double reach() const;
};

struct ZoneDims {
  double forward = 0.0;
  double rear = 0.0;
  double width = 0.0;

  /// Centered collision zone of the given length and width.
  static ZoneDims centered(double length, double width) {
    return {length / 2.0, length / 2.0, width};
  }
  bool operator==(const ZoneDims&) const = default;
};

OrientedRect zone_rect(const VehicleState& s, const ZoneDims& dims);
OrientedRect zone_rect(Vec2 position, double heading, const ZoneDims& dims);

/// Exact area of the intersection of two oriented rectangles.
double overlap_area(const OrientedRect& r1, const OrientedRect& r2);

/// Area of the intersection of two convex polygons (counter-clockwise).
double convex_overlap_area(std::span<const Vec2> p, std::span<const Vec2> q);

double polygon_area(std::span<const Vec2> polygon);

}  // namespace uisim
