#pragma once

#include <cmath>
#include <optional>

namespace gridmob {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Axis-aligned rectangle given by its lower-left corner and extent.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double x_max() const { return x + w; }
  double y_max() const { return y + h; }

  bool contains_closed(Point p) const {
    return p.x >= x && p.x <= x_max() && p.y >= y && p.y <= y_max();
  }
  bool contains_open(Point p) const {
    return p.x > x && p.x < x_max() && p.y > y && p.y < y_max();
  }
};

// Interiors intersect (sharing an edge or a corner does not count).
bool interiors_overlap(const Rect& a, const Rect& b);

// Euclidean distance between two closed rectangles (0 when they touch).
double rect_distance(const Rect& a, const Rect& b);

// Euclidean distance from a point to a closed rectangle.
double point_rect_distance(Point p, const Rect& r);

// True iff the closed segment pq meets the open interior of r. Touching the
// boundary only (grazing an edge, passing through a corner) is not a hit.
bool segment_hits_interior(Point p, Point q, const Rect& r);

// Smallest t >= 0 such that origin + t*dir enters the open interior of r, or
// nullopt when the ray never does. dir need not be normalized.
std::optional<double> ray_interior_entry(Point origin, Point dir, const Rect& r);

// Largest t >= 0 such that origin + t*dir is still inside the closed
// rectangle r. origin must lie in r.
double ray_exit_distance(Point origin, Point dir, const Rect& r);

}  // namespace gridmob
