#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gridmob/geometry.hpp"
#include "gridmob/grid_env.hpp"

namespace gridmob {

inline constexpr int kMinRays = 64;
inline constexpr int kDefaultRays = 2048;

// Line of sight: the segment pq avoids the open interior of every obstacle.
bool los_visible(Point p, Point q, const GridEnvironment& env);

// Area of {q : |pq| <= r, q inside the environment, los_visible(p, q)} from
// `rays` equiangular rays offset by half a step, each clipped at the first
// border or obstacle it meets. Throws Error(ResolutionTooLow) below 64 rays.
double coverage_numeric(Point p, double r, const GridEnvironment& env, int rays = kDefaultRays);

// Same, against an explicit scene.
double coverage_numeric(Point p, double r, const Rect& bounds, std::span<const Rect> obstacles,
                        int rays = kDefaultRays);

// Station beside one face of an obstacle, within range of one of that face's
// corners F. `x` and `y` are the station's offsets from F.
//  BesideVerticalFace:   Px <= Fx and Py >= Fy; x is the distance to the face.
//  BesideHorizontalFace: Px >= Fx and Py <= Fy; y is the distance to the face.
enum class Zone6Branch { BesideVerticalFace, BesideHorizontalFace };

// Closed-form covered area for the corner configuration above. Requires
// x, y >= 0 and x^2 + y^2 <= r^2; throws Error(DomainError) otherwise.
double coverage_zone6(double x, double y, double r,
                      Zone6Branch branch = Zone6Branch::BesideVerticalFace);

// Area of the disk of radius r cut by one straight wall at distance d < r.
double wall_coverage(double d, double r);

// Area of the disk of radius r centred at p intersected with the rectangle.
double disk_rect_intersection(Point p, double r, const Rect& rect);

enum class AnalyticCase { FreeDisk, Wall, EnvironmentCorner, ObstacleWall, Zone6 };
std::string_view to_string(AnalyticCase kind);

struct AnalyticCoverage {
  AnalyticCase kind;
  double area;
};

// Closed-form coverage when the neighbourhood of p within range is one of the
// standard cases (nothing, environment borders only, or a single obstacle
// seen from beside one of its faces). nullopt otherwise.
std::optional<AnalyticCoverage> analytic_coverage(Point p, double r, const GridEnvironment& env);

struct CoverageDiagnostic {
  NodeIndex node;
  AnalyticCase kind;
  double analytic;
  double numeric;
  double relative_error;
};

struct CoverageMap {
  std::vector<double> area;  // per free node, m^2
  double radio_range = 0.0;
  int rays = kDefaultRays;
  std::size_t analytic_checked = 0;
  std::vector<CoverageDiagnostic> diagnostics;  // analytic/numeric gaps above 1%
};

CoverageMap coverage_map(const GridEnvironment& env, double r, int rays = kDefaultRays,
                         unsigned threads = 1);

}  // namespace gridmob
