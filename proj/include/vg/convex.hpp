#pragma once

#include <vector>

#include "vg/geometry.hpp"

namespace vg {

// Closed half-space {x : dot(normal, x) <= offset}.
struct HalfSpace {
  Point normal;
  double offset = 0.0;
};

// Convex polygon, counter-clockwise vertex order.
class ConvexPolygon {
 public:
  static ConvexPolygon box(double xmin, double ymin, double xmax, double ymax);
  explicit ConvexPolygon(std::vector<Point> ccw = {}) : v_(std::move(ccw)) {}

  void clip(const HalfSpace& h);
  bool empty() const { return v_.empty(); }
  const std::vector<Point>& vertices() const { return v_; }
  double area() const;
  Point vertex_centroid() const;

 private:
  std::vector<Point> v_;
};

// Convex polytope stored as a list of planar faces.
class ConvexPolytope {
 public:
  static ConvexPolytope box(const Point& lo, const Point& hi);

  void clip(const HalfSpace& h);
  bool empty() const { return faces_.empty(); }
  std::vector<Point> vertices() const;
  double volume() const;
  Point vertex_centroid() const;

 private:
  std::vector<std::vector<Point>> faces_;
};

}  // namespace vg
