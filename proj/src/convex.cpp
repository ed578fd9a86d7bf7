#include "vg/convex.hpp"

#include <algorithm>
#include <cmath>

namespace vg {

namespace {

constexpr double kClipEps = 1e-12;

Point lerp(const Point& a, const Point& b, double t) { return a + t * (b - a); }

std::vector<Point> dedupe(const std::vector<Point>& pts, double tol) {
  std::vector<Point> out;
  for (const Point& p : pts) {
    bool seen = false;
    for (const Point& q : out)
      if (distance(p, q) <= tol) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(p);
  }
  return out;
}

}  // namespace

ConvexPolygon ConvexPolygon::box(double xmin, double ymin, double xmax, double ymax) {
  return ConvexPolygon(
      {Point(xmin, ymin), Point(xmax, ymin), Point(xmax, ymax), Point(xmin, ymax)});
}

void ConvexPolygon::clip(const HalfSpace& h) {
  if (v_.empty()) return;
  std::vector<Point> out;
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = v_[i];
    const Point& b = v_[(i + 1) % n];
    const double fa = dot(h.normal, a) - h.offset;
    const double fb = dot(h.normal, b) - h.offset;
    if (fa <= kClipEps) out.push_back(a);
    if ((fa < -kClipEps && fb > kClipEps) || (fa > kClipEps && fb < -kClipEps))
      out.push_back(lerp(a, b, fa / (fa - fb)));
  }
  v_ = dedupe(out, 1e-12);
}

double ConvexPolygon::area() const {
  double s = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    const Point& a = v_[i];
    const Point& b = v_[(i + 1) % v_.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return 0.5 * s;
}

Point ConvexPolygon::vertex_centroid() const {
  Point c(0, 0);
  for (const Point& p : v_) c = c + p;
  return (1.0 / static_cast<double>(v_.size())) * c;
}

ConvexPolytope ConvexPolytope::box(const Point& lo, const Point& hi) {
  auto P = [&](int i, int j, int k) {
    return Point(i ? hi[0] : lo[0], j ? hi[1] : lo[1], k ? hi[2] : lo[2]);
  };
  ConvexPolytope b;
  b.faces_ = {
      {P(0, 0, 0), P(0, 1, 0), P(1, 1, 0), P(1, 0, 0)},
      {P(0, 0, 1), P(1, 0, 1), P(1, 1, 1), P(0, 1, 1)},
      {P(0, 0, 0), P(1, 0, 0), P(1, 0, 1), P(0, 0, 1)},
      {P(0, 1, 0), P(0, 1, 1), P(1, 1, 1), P(1, 1, 0)},
      {P(0, 0, 0), P(0, 0, 1), P(0, 1, 1), P(0, 1, 0)},
      {P(1, 0, 0), P(1, 1, 0), P(1, 1, 1), P(1, 0, 1)},
  };
  return b;
}

void ConvexPolytope::clip(const HalfSpace& h) {
  if (faces_.empty()) return;
  bool any_out = false, any_in = false;
  for (const auto& f : faces_)
    for (const Point& p : f) {
      const double s = dot(h.normal, p) - h.offset;
      if (s > kClipEps) any_out = true;
      if (s < -kClipEps) any_in = true;
    }
  if (!any_out) return;
  if (!any_in) {
    faces_.clear();
    return;
  }
  std::vector<std::vector<Point>> out;
  std::vector<Point> cap;
  for (const auto& f : faces_) {
    std::vector<Point> g;
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = f[i];
      const Point& b = f[(i + 1) % n];
      const double fa = dot(h.normal, a) - h.offset;
      const double fb = dot(h.normal, b) - h.offset;
      if (fa <= kClipEps) g.push_back(a);
      if (std::abs(fa) <= kClipEps) cap.push_back(a);
      if ((fa < -kClipEps && fb > kClipEps) || (fa > kClipEps && fb < -kClipEps)) {
        const Point x = lerp(a, b, fa / (fa - fb));
        g.push_back(x);
        cap.push_back(x);
      }
    }
    g = dedupe(g, 1e-12);
    if (g.size() >= 3) out.push_back(std::move(g));
  }
  cap = dedupe(cap, 1e-12);
  if (cap.size() >= 3) {
    // Order the cap around its centroid, outward normal = h.normal.
    Point c(0, 0, 0);
    for (const Point& p : cap) c = c + p;
    c = (1.0 / static_cast<double>(cap.size())) * c;
    const Point n = normalized(h.normal);
    Point e1 = cap[0] - c;
    e1 = e1 - dot(e1, n) * n;
    if (norm(e1) > 0) {
      e1 = normalized(e1);
      const Point e2 = cross(n, e1);
      std::sort(cap.begin(), cap.end(), [&](const Point& a, const Point& b) {
        const Point da = a - c, db = b - c;
        return std::atan2(dot(da, e2), dot(da, e1)) < std::atan2(dot(db, e2), dot(db, e1));
      });
      out.push_back(std::move(cap));
    }
  }
  faces_ = std::move(out);
  if (faces_.size() < 4) faces_.clear();
}

std::vector<Point> ConvexPolytope::vertices() const {
  std::vector<Point> all;
  for (const auto& f : faces_) all.insert(all.end(), f.begin(), f.end());
  return dedupe(all, 1e-10);
}

double ConvexPolytope::volume() const {
  if (faces_.empty()) return 0.0;
  const auto vs = vertices();
  Point o(0, 0, 0);
  for (const Point& p : vs) o = o + p;
  o = (1.0 / static_cast<double>(vs.size())) * o;
  double vol = 0.0;
  for (const auto& f : faces_)
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
      vol += std::abs(orient3d(o, f[0], f[i], f[i + 1])) / 6.0;
  return vol;
}

Point ConvexPolytope::vertex_centroid() const {
  const auto vs = vertices();
  Point c(0, 0, 0);
  for (const Point& p : vs) c = c + p;
  return (1.0 / static_cast<double>(vs.size())) * c;
}

}  // namespace vg
