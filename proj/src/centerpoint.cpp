#include <algorithm>
#include <cmath>
#include <functional>

#include "vg/convex.hpp"
#include "vg/p1_strategies.hpp"

namespace vg {

namespace {

enum class Region { empty, flat, solid };

struct Bounds {
  Point lo, hi;
  double scale = 1.0;
};

Bounds bounds_of(std::span<const Point> pts) {
  Bounds b{pts[0], pts[0], 1.0};
  for (const Point& p : pts)
    for (int i = 0; i < p.dim; ++i) {
      b.lo[i] = std::min(b.lo[i], p[i]);
      b.hi[i] = std::max(b.hi[i], p[i]);
    }
  double ext = 0.0;
  for (int i = 0; i < pts[0].dim; ++i) ext = std::max(ext, b.hi[i] - b.lo[i]);
  b.scale = std::max(ext, 1.0);
  for (int i = 0; i < pts[0].dim; ++i) {
    b.lo[i] -= 0.1 * b.scale;
    b.hi[i] += 0.1 * b.scale;
  }
  return b;
}

// Every open side holding at most tau-1 points must be avoided, so the
// region is the intersection of the complementary closed sides.
std::vector<HalfSpace> constraints(const std::vector<kernels::Split>& splits, int tau,
                                   double slack) {
  std::vector<HalfSpace> hs;
  for (const auto& s : splits) {
    if (norm(s.normal) == 0.0) continue;
    if (s.positive <= tau - 1) hs.push_back({s.normal, s.offset + slack});
    if (s.negative <= tau - 1) hs.push_back({-1.0 * s.normal, -s.offset + slack});
  }
  return hs;
}

Region clip_region(std::span<const Point> pts, const std::vector<kernels::Split>& splits,
                   int tau, double slack, Point& out) {
  const Bounds b = bounds_of(pts);
  const auto hs = constraints(splits, tau, slack);
  if (pts[0].dim == 2) {
    auto poly = ConvexPolygon::box(b.lo[0], b.lo[1], b.hi[0], b.hi[1]);
    for (const auto& h : hs) {
      poly.clip(h);
      if (poly.empty()) return Region::empty;
    }
    out = poly.vertex_centroid();
    return poly.area() > 1e-12 * b.scale * b.scale ? Region::solid : Region::flat;
  }
  auto poly = ConvexPolytope::box(b.lo, b.hi);
  for (const auto& h : hs) {
    poly.clip(h);
    if (poly.empty()) return Region::empty;
  }
  out = poly.vertex_centroid();
  return poly.volume() > 1e-12 * b.scale * b.scale * b.scale ? Region::solid : Region::flat;
}

// Vertices of the arrangement of constraint boundaries at level tau. The
// deepest region can shrink to one such vertex (four points in convex
// position leave only the crossing of the diagonals).
bool vertex_candidate(std::span<const Point> pts, const std::vector<kernels::Split>& splits,
                      int tau, const std::function<bool(const Point&)>& ok, Point& out) {
  const auto hs = constraints(splits, tau, 0.0);
  const std::size_t m = hs.size();
  const int d = pts[0].dim;
  if (m > (d == 2 ? 4000u : 300u)) return false;
  bool found = false;
  auto offer = [&](const Point& x) {
    if (!is_finite(x) || !ok(x)) return;
    if (!found || lex_less(x, out)) out = x;
    found = true;
  };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const Point& na = hs[a].normal;
      const Point& nb = hs[b].normal;
      if (d == 2) {
        const double det = na[0] * nb[1] - na[1] * nb[0];
        if (std::abs(det) < 1e-12) continue;
        offer(Point((hs[a].offset * nb[1] - na[1] * hs[b].offset) / det,
                    (na[0] * hs[b].offset - hs[a].offset * nb[0]) / det));
        continue;
      }
      for (std::size_t c = b + 1; c < m; ++c) {
        const Point& nc = hs[c].normal;
        const double det = dot(na, cross(nb, nc));
        if (std::abs(det) < 1e-12) continue;
        const Point x = (1.0 / det) * (hs[a].offset * cross(nb, nc) + hs[b].offset * cross(nc, na) +
                                       hs[c].offset * cross(na, nb));
        offer(x);
      }
    }
  return found;
}

Point centroid(std::span<const Point> pts) {
  Point c = pts[0];
  for (std::size_t i = 1; i < pts.size(); ++i) c = c + pts[i];
  return (1.0 / static_cast<double>(pts.size())) * c;
}

}  // namespace

bool depth_region_point(std::span<const Point> pts, int tau, kernels::Exec exec, Point& out,
                        double slack) {
  if (pts.empty()) return false;
  const auto splits = kernels::hyperplane_splits(pts, exec);
  return clip_region(pts, splits, tau, slack, out) != Region::empty;
}

Point centerpoint(std::span<const Point> pts, kernels::Exec exec) {
  if (pts.empty()) throw std::invalid_argument("centerpoint of an empty set");
  const int n = static_cast<int>(pts.size());
  const int d = pts[0].dim;
  const int tau0 = (n + d) / (d + 1);
  auto verified = [&](const Point& x) { return tukey_depth(x, pts) >= tau0; };

  if (n == 1) return pts[0];
  if (n <= d + 1) {
    const Point c = centroid(pts);
    if (!verified(c)) throw DegenerateError("centroid failed the depth check");
    return c;
  }

  const auto splits = kernels::hyperplane_splits(pts, exec);
  // Deepest level whose region still has interior; the region shrinks as
  // tau grows, so binary search applies.
  Point best;
  int lo = tau0, hi = n;
  bool have = false;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    Point x;
    if (clip_region(pts, splits, mid, 0.0, x) == Region::solid) {
      best = x;
      have = true;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  if (have && verified(best)) return best;

  // The centerpoint region can be flat or a single point; widen slightly.
  const double scale = bounds_of(pts).scale;
  for (double slack : {0.0, 1e-9 * scale, 1e-7 * scale, 1e-5 * scale}) {
    Point x;
    if (clip_region(pts, splits, tau0, slack, x) != Region::empty && verified(x)) return x;
  }
  Point v;
  if (vertex_candidate(pts, splits, tau0, verified, v)) return v;
  throw DegenerateError("centerpoint verification failed");
}

Point centerpoint(const UserSet& users) { return centerpoint(users.points()); }

}  // namespace vg
