#include "gridmob/geometry.hpp"

#include <algorithm>
#include <limits>

namespace gridmob {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Open parameter interval on which origin + t*d lies strictly between lo and hi
// along one axis. Returns false when the interval is empty.
bool open_slab(double origin, double d, double lo, double hi, double& t0, double& t1) {
  if (d == 0.0) {
    if (origin > lo && origin < hi) {
      t0 = -kInf;
      t1 = kInf;
      return true;
    }
    return false;
  }
  double a = (lo - origin) / d;
  double b = (hi - origin) / d;
  if (a > b) std::swap(a, b);
  t0 = a;
  t1 = b;
  return true;
}

// Parameter interval (lo, hi) of the line clipped to the open interior.
bool clip_open(Point o, Point d, const Rect& r, double& lo, double& hi) {
  double tx0, tx1, ty0, ty1;
  if (!open_slab(o.x, d.x, r.x, r.x_max(), tx0, tx1)) return false;
  if (!open_slab(o.y, d.y, r.y, r.y_max(), ty0, ty1)) return false;
  lo = std::max(tx0, ty0);
  hi = std::min(tx1, ty1);
  return lo < hi;
}

}  // namespace

bool interiors_overlap(const Rect& a, const Rect& b) {
  return a.x < b.x_max() && b.x < a.x_max() && a.y < b.y_max() && b.y < a.y_max();
}

double rect_distance(const Rect& a, const Rect& b) {
  double dx = std::max({0.0, b.x - a.x_max(), a.x - b.x_max()});
  double dy = std::max({0.0, b.y - a.y_max(), a.y - b.y_max()});
  return std::hypot(dx, dy);
}

double point_rect_distance(Point p, const Rect& r) {
  double dx = std::max({0.0, r.x - p.x, p.x - r.x_max()});
  double dy = std::max({0.0, r.y - p.y, p.y - r.y_max()});
  return std::hypot(dx, dy);
}

bool segment_hits_interior(Point p, Point q, const Rect& r) {
  Point d{q.x - p.x, q.y - p.y};
  double lo, hi;
  if (!clip_open(p, d, r, lo, hi)) return false;
  return std::max(lo, 0.0) < std::min(hi, 1.0);
}

std::optional<double> ray_interior_entry(Point origin, Point dir, const Rect& r) {
  double lo, hi;
  if (!clip_open(origin, dir, r, lo, hi)) return std::nullopt;
  if (hi <= 0.0) return std::nullopt;
  return std::max(lo, 0.0);
}

double ray_exit_distance(Point origin, Point dir, const Rect& r) {
  double t = kInf;
  if (dir.x > 0) t = std::min(t, (r.x_max() - origin.x) / dir.x);
  if (dir.x < 0) t = std::min(t, (r.x - origin.x) / dir.x);
  if (dir.y > 0) t = std::min(t, (r.y_max() - origin.y) / dir.y);
  if (dir.y < 0) t = std::min(t, (r.y - origin.y) / dir.y);
  return std::max(t, 0.0);
}

}  // namespace gridmob
