#include "uisim/render.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace uisim {

namespace {

constexpr double kArmLength = 45.0;
constexpr double kScale = 6.0;  // pixels per meter

struct Canvas {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();
  std::string body;

  void include(Vec2 p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  // SVG y grows downward.
  std::string pt(Vec2 p) const { return fmt::format("{:.3f},{:.3f}", p.x * kScale, -p.y * kScale); }

  void line(Vec2 a, Vec2 b, const char* style) {
    body += fmt::format("<polyline points=\"{} {}\" {}/>\n", pt(a), pt(b), style);
  }
  void polygon(std::span<const Vec2> pts, const char* style) {
    std::string s;
    for (const auto& p : pts) s += pt(p) + " ";
    body += fmt::format("<polygon points=\"{}\" {}/>\n", s, style);
  }
  void polyline(std::span<const Vec2> pts, const char* style) {
    std::string s;
    for (const auto& p : pts) s += pt(p) + " ";
    body += fmt::format("<polyline points=\"{}\" {}/>\n", s, style);
  }
  void text(Vec2 p, const std::string& s) {
    body += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                        p.x * kScale, -p.y * kScale + 4.0, s);
  }
  std::string finish() const {
    const double m = 5.0;
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.3f} {:.3f} {:.3f} {:.3f}\">\n"
        "<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\" fill=\"#f4f4f0\"/>\n{}</svg>\n",
        (min_x - m) * kScale, -(max_y + m) * kScale, (max_x - min_x + 2 * m) * kScale, (max_y - min_y + 2 * m) * kScale,
        (min_x - m) * kScale, -(max_y + m) * kScale, (max_x - min_x + 2 * m) * kScale, (max_y - min_y + 2 * m) * kScale,
        body);
  }
};

/// Triangle centered on p pointing along heading.
std::array<Vec2, 3> marker(Vec2 p, double heading) {
  const Vec2 u = unit_from_angle(heading);
  const Vec2 n{-u.y, u.x};
  return {p + u * 1.2, p - u * 0.8 + n * 0.9, p - u * 0.8 - n * 0.9};
}

void draw_roads(Canvas& c, const IntersectionSpec& spec) {
  const auto layout = corners_and_entrances(spec);
  for (int m = 0; m < spec.arm_count; ++m) {
    const Vec2 u = unit_from_angle(spec.phi[m]);
    const Line entrance = layout.entrance_line(m);
    for (int k = -2 * spec.backward_lanes[m]; k <= 2 * spec.forward_lanes[m]; k += 2) {
      const auto start = intersect(lane_line(spec, m, k), entrance);
      if (!start) continue;
      const Vec2 end = *start + u * kArmLength;
      c.include(*start);
      c.include(end);
      const bool edge = k == -2 * spec.backward_lanes[m] || k == 2 * spec.forward_lanes[m];
      const char* style = edge ? "stroke=\"#333\" stroke-width=\"2\" fill=\"none\""
                        : k == 0 ? "stroke=\"#c90\" stroke-width=\"1.5\" fill=\"none\""
                                 : "stroke=\"#888\" stroke-width=\"1\" stroke-dasharray=\"8,6\" fill=\"none\"";
      c.line(*start, end, style);
    }
    const auto& seg = layout.entrance_lines[m];
    c.line(seg.from, seg.to, "stroke=\"#bbb\" stroke-width=\"1\" fill=\"none\"");
  }
}

void draw_path(Canvas& c, const Path& path) {
  std::vector<Vec2> pts;
  const int samples = 80;
  for (int s = 0; s <= samples; ++s) pts.push_back(path.eval(path.rho_terminal() * s / samples).point);
  c.polyline(pts, "stroke=\"#58a\" stroke-width=\"1\" stroke-dasharray=\"2,4\" fill=\"none\"");
  const auto en = marker(path.entrance_point(), path.eval(path.rho_entrance()).heading);
  const auto ex = marker(path.exit_point(), path.eval(path.rho_exit()).heading);
  c.polygon(en, "fill=\"#2a2\"");
  c.polygon(ex, "fill=\"#c33\"");
}

}  // namespace

std::string render_frame(const Traffic& world, const StepRecord& record, const SimParams& params) {
  Canvas c;
  draw_roads(c, world.spec);
  for (const auto& v : world.vehicles) draw_path(c, *v.path);
  std::vector<int> collided;
  for (const auto& e : record.events) {
    if (e.type == "collision") collided.insert(collided.end(), e.vehicles.begin(), e.vehicles.end());
  }
  for (const auto& s : record.vehicles) {
    const auto corners = zone_rect({s.x, s.y}, s.theta, params.reward.c_zone).corners();
    const bool hit = std::find(collided.begin(), collided.end(), s.id) != collided.end();
    c.polygon(corners, hit ? "fill=\"#e55\" stroke=\"#900\"" : "fill=\"#9cf\" stroke=\"#036\"");
    c.text({s.x, s.y}, std::to_string(s.id));
    for (const auto& p : corners) c.include(p);
  }
  c.text({c.min_x + 6.0, c.max_y - 1.0}, fmt::format("t = {}", record.t));
  return c.finish();
}

void check_trace_matches(const Traffic& world, const std::vector<StepRecord>& trace) {
  for (const auto& r : trace) {
    for (const auto& s : r.vehicles) {
      if (s.id < 0 || s.id >= static_cast<int>(world.vehicles.size())) {
        throw std::invalid_argument(fmt::format("step {}: vehicle {} is not in the scenario", r.t, s.id));
      }
      const auto pose = world.vehicles[s.id].path->eval(s.rho);
      if ((pose.point - Vec2{s.x, s.y}).norm() > 1e-6) {
        throw std::invalid_argument(
            fmt::format("step {}: vehicle {} is off its scenario path at rho = {}", r.t, s.id, s.rho));
      }
    }
  }
}

std::vector<std::string> render_frames(const ScenarioSpec& scenario, const std::vector<StepRecord>& trace,
                                       int every, const std::string& out_dir, const SimParams& params) {
  if (every < 1) throw std::invalid_argument("--every must be at least 1");
  const Traffic world = build_world(scenario, params);
  check_trace_matches(world, trace);
  std::vector<StepRecord> frames;
  if (trace.empty()) {
    StepRecord initial;
    for (const auto& v : world.vehicles) {
      initial.vehicles.push_back({v.id, v.state.rho, v.state.v, v.state.x, v.state.y, v.state.theta, {}, {}, {}});
    }
    frames.push_back(std::move(initial));
  } else {
    for (const auto& r : trace) {
      if (r.t % every == 0) frames.push_back(r);
    }
  }
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> names;
  for (const auto& r : frames) {
    const auto name = fmt::format("frame_{:04d}.svg", r.t);
    std::ofstream out(std::filesystem::path(out_dir) / name);
    if (!out) throw std::runtime_error(fmt::format("cannot write frame '{}'", name));
    out << render_frame(world, r, params);
    names.push_back(name);
  }
  return names;
}

}  // namespace uisim
