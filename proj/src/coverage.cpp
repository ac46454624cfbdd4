#include "gridmob/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gridmob/error.hpp"
#include "gridmob/parallel.hpp"

namespace gridmob {
namespace {

using std::numbers::pi;

// Area of the part of the disk beyond a chord at distance d from the centre.
double circular_segment(double d, double r) {
  if (d >= r) return 0.0;
  d = std::max(d, -r);
  return r * r * std::acos(d / r) - d * std::sqrt(r * r - d * d);
}

// Antiderivative of sqrt(r^2 - x^2).
double half_disk_integral(double x, double r) {
  x = std::clamp(x, -r, r);
  return 0.5 * (x * std::sqrt(r * r - x * x) + r * r * std::asin(x / r));
}

// Area of the disk part with X > a and Y > b (centre at the origin), a, b >= 0.
double corner_cut(double a, double b, double r) {
  if (a * a + b * b >= r * r) return 0.0;
  double x_end = std::sqrt(r * r - b * b);
  return half_disk_integral(x_end, r) - half_disk_integral(a, r) - b * (x_end - a);
}

std::vector<Rect> obstacles_near(Point p, double r, std::span<const Obstacle> obstacles) {
  std::vector<Rect> near;
  for (const Obstacle& o : obstacles) {
    Rect rect = o.rect();
    if (point_rect_distance(p, rect) < r) near.push_back(rect);
  }
  return near;
}

double zone6_formula(double wall, double along, double r) {
  double alpha = std::acos(wall / r);
  return 3.0 * pi * r * r / 4.0 + wall * along / 2.0 + r * r * std::atan2(wall, along) / 2.0 +
         wall * r * std::sin(alpha) / 2.0 - r * r * alpha / 2.0;
}

// Coverage next to a single obstacle seen from beside one of its faces.
std::optional<AnalyticCoverage> single_obstacle_case(Point p, double r, const Rect& o) {
  double wall;
  double along_lo;  // offset from the face's lower (or left) corner
  double along_hi;
  bool vertical_face;
  if ((p.x <= o.x || p.x >= o.x_max()) && p.y > o.y && p.y < o.y_max()) {
    wall = p.x <= o.x ? o.x - p.x : p.x - o.x_max();
    along_lo = p.y - o.y;
    along_hi = o.y_max() - p.y;
    vertical_face = true;
  } else if ((p.y <= o.y || p.y >= o.y_max()) && p.x > o.x && p.x < o.x_max()) {
    wall = p.y <= o.y ? o.y - p.y : p.y - o.y_max();
    along_lo = p.x - o.x;
    along_hi = o.x_max() - p.x;
    vertical_face = false;
  } else {
    return std::nullopt;
  }
  bool lo_in = wall * wall + along_lo * along_lo < r * r;
  bool hi_in = wall * wall + along_hi * along_hi < r * r;
  if (lo_in && hi_in) return std::nullopt;
  if (!lo_in && !hi_in) return AnalyticCoverage{AnalyticCase::ObstacleWall, wall_coverage(wall, r)};
  double along = lo_in ? along_lo : along_hi;
  double area = vertical_face ? coverage_zone6(wall, along, r, Zone6Branch::BesideVerticalFace)
                              : coverage_zone6(along, wall, r, Zone6Branch::BesideHorizontalFace);
  return AnalyticCoverage{AnalyticCase::Zone6, area};
}

}  // namespace

bool los_visible(Point p, Point q, const GridEnvironment& env) {
  for (const Obstacle& o : env.obstacles()) {
    if (segment_hits_interior(p, q, o.rect())) return false;
  }
  return true;
}

double coverage_numeric(Point p, double r, const Rect& bounds, std::span<const Rect> obstacles,
                        int rays) {
  if (rays < kMinRays) {
    throw Error(ErrorCode::ResolutionTooLow,
                "at least " + std::to_string(kMinRays) + " rays are required, got " +
                    std::to_string(rays));
  }
  const double step = 2.0 * pi / rays;
  double sum = 0.0;
  for (int k = 0; k < rays; ++k) {
    double theta = (k + 0.5) * step;
    Point dir{std::cos(theta), std::sin(theta)};
    double d = std::min(r, ray_exit_distance(p, dir, bounds));
    for (const Rect& o : obstacles) {
      if (auto hit = ray_interior_entry(p, dir, o)) d = std::min(d, *hit);
    }
    sum += d * d;
  }
  return 0.5 * sum * step;
}

double coverage_numeric(Point p, double r, const GridEnvironment& env, int rays) {
  std::vector<Rect> near = obstacles_near(p, r, env.obstacles());
  return coverage_numeric(p, r, env.bounds(), near, rays);
}

double coverage_zone6(double x, double y, double r, Zone6Branch branch) {
  if (!(r > 0.0) || !(x >= 0.0) || !(y >= 0.0) || x * x + y * y > r * r * (1.0 + 1e-12)) {
    throw Error(ErrorCode::DomainError,
                "zone-6 coverage needs x, y >= 0 and x^2 + y^2 <= r^2");
  }
  return branch == Zone6Branch::BesideVerticalFace ? zone6_formula(x, y, r)
                                                   : zone6_formula(y, x, r);
}

double wall_coverage(double d, double r) { return pi * r * r - circular_segment(d, r); }

double disk_rect_intersection(Point p, double r, const Rect& rect) {
  // Signed distances to the left, bottom, right and top sides.
  const double d[4] = {p.x - rect.x, p.y - rect.y, rect.x_max() - p.x, rect.y_max() - p.y};
  double area = pi * r * r;
  for (double di : d) area -= circular_segment(di, r);
  for (int i = 0; i < 4; ++i) {
    double a = d[i];
    double b = d[(i + 1) % 4];
    if (a >= 0.0 && b >= 0.0) area += corner_cut(a, b, r);
  }
  return std::max(area, 0.0);
}

std::string_view to_string(AnalyticCase kind) {
  switch (kind) {
    case AnalyticCase::FreeDisk: return "free-disk";
    case AnalyticCase::Wall: return "wall";
    case AnalyticCase::EnvironmentCorner: return "environment-corner";
    case AnalyticCase::ObstacleWall: return "obstacle-wall";
    case AnalyticCase::Zone6: return "zone-6";
  }
  return "unknown";
}

std::optional<AnalyticCoverage> analytic_coverage(Point p, double r, const GridEnvironment& env) {
  const Rect b = env.bounds();
  if (!b.contains_closed(p)) return std::nullopt;
  std::vector<Rect> near = obstacles_near(p, r, env.obstacles());
  const double border[4] = {p.x - b.x, p.y - b.y, b.x_max() - p.x, b.y_max() - p.y};
  int borders_in_range = 0;
  for (double d : border) borders_in_range += d < r ? 1 : 0;

  if (near.empty()) {
    if (borders_in_range == 0) return AnalyticCoverage{AnalyticCase::FreeDisk, pi * r * r};
    auto kind = borders_in_range == 1 ? AnalyticCase::Wall : AnalyticCase::EnvironmentCorner;
    return AnalyticCoverage{kind, disk_rect_intersection(p, r, b)};
  }
  if (near.size() == 1 && borders_in_range == 0 && !near.front().contains_open(p)) {
    return single_obstacle_case(p, r, near.front());
  }
  return std::nullopt;
}

CoverageMap coverage_map(const GridEnvironment& env, double r, int rays, unsigned threads) {
  if (rays < kMinRays) {
    throw Error(ErrorCode::ResolutionTooLow,
                "at least " + std::to_string(kMinRays) + " rays are required, got " +
                    std::to_string(rays));
  }
  const std::size_t n = env.node_count();
  CoverageMap map;
  map.radio_range = r;
  map.rays = rays;
  map.area.assign(n, 0.0);
  std::vector<std::optional<AnalyticCoverage>> analytic(n);
  parallel_for(n, threads, [&](std::size_t i) {
    Point p = env.position(static_cast<NodeIndex>(i));
    map.area[i] = coverage_numeric(p, r, env, rays);
    analytic[i] = analytic_coverage(p, r, env);
  });
  for (NodeIndex i = 0; i < n; ++i) {
    if (!analytic[i]) continue;
    ++map.analytic_checked;
    double rel = std::abs(map.area[i] - analytic[i]->area) / analytic[i]->area;
    if (rel > 0.01) {
      map.diagnostics.push_back({i, analytic[i]->kind, analytic[i]->area, map.area[i], rel});
    }
  }
  return map;
}

}  // namespace gridmob
