#include "vg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace vg::oracle {

namespace {

int open_depth(std::span<const Disk> disks, const Point& p) {
  int c = 0;
  for (const Disk& d : disks) c += d.contains_open(p) ? 1 : 0;
  return c;
}

// Both boundary intersection points of two circles, if any.
int circle_intersections(const Disk& a, const Disk& b, Point out[2]) {
  const double dd = distance(a.center, b.center);
  if (dd == 0.0 || dd > a.radius + b.radius || dd < std::abs(a.radius - b.radius)) return 0;
  const double along = (dd * dd + a.radius * a.radius - b.radius * b.radius) / (2 * dd);
  const double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
  const Point u = (1.0 / dd) * (b.center - a.center);
  const Point base = a.center + along * u;
  const Point perp(-u[1], u[0]);
  out[0] = base + h * perp;
  out[1] = base - h * perp;
  return 2;
}

}  // namespace

BestResponse brute_force_best_response(const UserSet& users, const FacilitySet& f1, int grid) {
  if (users.dimension() != 2) throw std::invalid_argument("brute-force oracle is planar");
  const auto disks = nearest_facility_disks(users, f1);
  std::vector<Point> cands(users.points());

  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x, scale = 0.0;
  for (const Disk& d : disks) {
    lo_x = std::min(lo_x, d.center[0] - d.radius);
    lo_y = std::min(lo_y, d.center[1] - d.radius);
    hi_x = std::max(hi_x, d.center[0] + d.radius);
    hi_y = std::max(hi_y, d.center[1] + d.radius);
    scale = std::max(scale, d.radius);
  }
  const double nudge = 1e-6 * std::max(scale, 1.0);
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      Point x[2];
      const int m = circle_intersections(disks[i], disks[j], x);
      for (int t = 0; t < m; ++t) {
        for (int dir = 0; dir < 8; ++dir) {
          const double a = dir * std::numbers::pi / 4;
          cands.push_back(x[t] + nudge * Point(std::cos(a), std::sin(a)));
        }
        // The four faces meeting at a crossing can be thinner than the
        // compass steps; their bisectors reach each one.
        const Point ni = normalized(x[t] - disks[i].center);
        const Point nj = normalized(x[t] - disks[j].center);
        for (double si : {1.0, -1.0})
          for (double sj : {1.0, -1.0}) {
            const Point b = si * ni + sj * nj;
            if (norm(b) > 0.0) cands.push_back(x[t] + nudge * normalized(b));
          }
      }
    }
  for (int gx = 0; gx <= grid; ++gx)
    for (int gy = 0; gy <= grid; ++gy)
      cands.emplace_back(lo_x + (hi_x - lo_x) * gx / grid, lo_y + (hi_y - lo_y) * gy / grid);

  BestResponse best;
  best.method = ResponseMethod::brute_force;
  best.payoff = -1;
  for (const Point& c : cands) {
    if (f1.contains(c)) continue;
    const int depth = open_depth(disks, c);
    if (depth > best.payoff) {
      best.payoff = depth;
      best.location = c;
    }
  }
  const auto rec = payoff(users, f1, FacilitySet({best.location}, Player::p2));
  best.payoff = rec.p2_count;
  best.served = rec.served_by_p2;
  return best;
}

int tukey_depth_by_directions(const Point& x, std::span<const Point> pts, int samples) {
  std::vector<Point> dirs;
  if (x.dim == 2) {
    for (int i = 0; i < samples; ++i) {
      const double a = 2 * std::numbers::pi * i / samples;
      dirs.emplace_back(std::cos(a), std::sin(a));
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Point v = pts[j] - pts[i];
        const double len = norm(v);
        if (len == 0.0) continue;
        for (double eps : {0.0, 1e-7, -1e-7}) {
          const double c = std::cos(eps), s = std::sin(eps);
          const Point nrm((-v[1] * c - v[0] * s) / len, (v[0] * c - v[1] * s) / len);
          dirs.push_back(nrm);
          dirs.push_back(-1.0 * nrm);
        }
      }
  } else {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < samples; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / samples;
      const double r = std::sqrt(1 - z * z);
      dirs.emplace_back(r * std::cos(golden * i), r * std::sin(golden * i), z);
    }
  }
  int best = static_cast<int>(pts.size());
  for (const Point& u : dirs) {
    const double t = dot(u, x);
    int c = 0;
    for (const Point& p : pts) c += dot(u, p) >= t - kTolerance ? 1 : 0;
    best = std::min(best, c);
  }
  return best;
}

PiercingReport check_piercing(std::span<const Point> pts, double eps,
                              std::span<const Point> net) {
  PiercingReport rep;
  if (pts.empty()) return rep;
  const int d = pts[0].dim;
  const double limit = eps * static_cast<double>(pts.size());
  const std::size_t n = pts.size();

  auto test = [&](std::span<const Point> support) {
    Disk ball;
    if (!circumball(support, ball)) return;
    ball.radius *= 1.0 + 1e-9;
    ball.radius += 1e-12;
    long inside = 0;
    for (const Point& p : pts) inside += ball.contains_closed(p, 0.0) ? 1 : 0;
    if (static_cast<double>(inside) <= limit) return;
    ++rep.candidates;
    const double tol = 1e-9 * std::max(1.0, ball.radius);
    for (const Point& q : net)
      if (ball.contains_closed(q, tol)) return;
    ++rep.misses;
  };

  std::vector<Point> s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      s = {pts[i], pts[j]};
      test(s);
      for (std::size_t k = j + 1; k < n; ++k) {
        s = {pts[i], pts[j], pts[k]};
        test(s);
        if (d == 3)
          for (std::size_t l = k + 1; l < n; ++l) {
            s = {pts[i], pts[j], pts[k], pts[l]};
            test(s);
          }
      }
    }
  return rep;
}

long random_piercing_misses(const Disk& cluster, std::span<const Point> piercers, long samples,
                            std::mt19937_64& rng) {
  const int d = cluster.center.dim;
  const double r = cluster.radius;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  long misses = 0;
  for (long t = 0; t < samples; ++t) {
    // Radius in [r, 20r]; the center within reach of the cluster.
    const double rad = r * std::exp(unit(rng) * std::log(20.0));
    Point dir = d == 2 ? Point(gauss(rng), gauss(rng)) : Point(gauss(rng), gauss(rng), gauss(rng));
    dir = normalized(dir);
    const double reach = (r + rad) * unit(rng);
    const Disk probe{cluster.center + reach * dir, rad};
    bool hit = false;
    for (const Point& q : piercers)
      if (probe.contains_closed(q, 1e-9 * std::max(1.0, rad))) {
        hit = true;
        break;
      }
    misses += hit ? 0 : 1;
  }
  return misses;
}

}  // namespace vg::oracle
