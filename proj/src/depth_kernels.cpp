#include "vg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace vg::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Event {
  double angle;
  int delta;
};

}  // namespace

ArcDepth sweep_circle(std::span<const Disk> disks, std::size_t i) {
  const Disk& di = disks[i];
  if (!(di.radius > 0.0)) return {0, 0.0};
  int base = 1;
  int wrapped = 0;
  std::vector<Event> events;
  for (std::size_t j = 0; j < disks.size(); ++j) {
    if (j == i || !(disks[j].radius > 0.0)) continue;
    const Disk& dj = disks[j];
    const double D = distance(di.center, dj.center);
    if (D + di.radius <= dj.radius) {
      ++base;  // boundary of i lies inside j
      continue;
    }
    if (D >= di.radius + dj.radius || D + dj.radius <= di.radius) continue;
    const double alpha = std::atan2(dj.center[1] - di.center[1], dj.center[0] - di.center[0]);
    const double kappa =
        (di.radius * di.radius + D * D - dj.radius * dj.radius) / (2.0 * di.radius * D);
    const double beta = std::acos(std::clamp(kappa, -1.0, 1.0));
    double s = std::fmod(alpha - beta, kTwoPi);
    if (s < 0) s += kTwoPi;
    const double e = s + 2.0 * beta;
    if (e >= kTwoPi) {
      ++wrapped;
      events.push_back({e - kTwoPi, -1});
      events.push_back({s, +1});
    } else {
      events.push_back({s, +1});
      events.push_back({e, -1});
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.angle < b.angle || (a.angle == b.angle && a.delta < b.delta);
  });

  // Deepest open interval; among equals, the widest one.
  ArcDepth best{-1, 0.0};
  double best_width = -1.0;
  int cur = base + wrapped;
  double prev = 0.0;
  auto consider = [&](double lo, double hi) {
    const double w = hi - lo;
    if (w <= kMinArc) return;
    if (cur > best.depth || (cur == best.depth && w > best_width)) {
      best = {cur, 0.5 * (lo + hi), w};
      best_width = w;
    }
  };
  for (const Event& ev : events) {
    consider(prev, ev.angle);
    cur += ev.delta;
    prev = ev.angle;
  }
  consider(prev, kTwoPi);
  return best;
}

std::vector<ArcDepth> sweep_all(std::span<const Disk> disks, Exec exec) {
  const long n = static_cast<long>(disks.size());
  std::vector<ArcDepth> out(disks.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = sweep_circle(disks, static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = sweep_circle(disks, static_cast<std::size_t>(i));
  }
  return out;
}

namespace {

Split make_split(std::span<const Point> pts, int a, int b, int c) {
  Split s;
  s.a = a;
  s.b = b;
  s.c = c;
  const Point& pa = pts[static_cast<std::size_t>(a)];
  const Point& pb = pts[static_cast<std::size_t>(b)];
  if (c < 0) {
    s.normal = Point(-(pb[1] - pa[1]), pb[0] - pa[0]);
  } else {
    s.normal = cross(pb - pa, pts[static_cast<std::size_t>(c)] - pa);
  }
  const double len = norm(s.normal);
  if (len == 0.0) return s;
  s.normal = (1.0 / len) * s.normal;
  s.offset = dot(s.normal, pa);
  for (const Point& p : pts) {
    const double v = dot(s.normal, p) - s.offset;
    if (v > kTolerance) ++s.positive;
    else if (v < -kTolerance) ++s.negative;
  }
  return s;
}

void splits_from(std::span<const Point> pts, int i, std::vector<Split>& out) {
  const int n = static_cast<int>(pts.size());
  const bool space = pts[0].dim == 3;
  for (int j = i + 1; j < n; ++j) {
    if (!space) {
      out.push_back(make_split(pts, i, j, -1));
      continue;
    }
    for (int k = j + 1; k < n; ++k) out.push_back(make_split(pts, i, j, k));
  }
}

}  // namespace

std::vector<Split> hyperplane_splits(std::span<const Point> pts, Exec exec) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<Split>> per_row(static_cast<std::size_t>(std::max(n, 0)));
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) splits_from(pts, i, per_row[static_cast<std::size_t>(i)]);
  } else {
    for (int i = 0; i < n; ++i) splits_from(pts, i, per_row[static_cast<std::size_t>(i)]);
  }
  std::vector<Split> out;
  for (auto& row : per_row) out.insert(out.end(), row.begin(), row.end());
  return out;
}

bool encloses(const Disk& d, const Point& p) {
  return distance(d.center, p) <= d.radius + 1e-9 * std::max(1.0, d.radius);
}

int count_enclosed(const Disk& d, std::span<const Point> pts) {
  int c = 0;
  for (const Point& p : pts)
    if (encloses(d, p)) ++c;
  return c;
}

namespace {

bool better(const Disk& a, const Disk& b) {
  if (a.radius != b.radius) return a.radius < b.radius;
  return lex_less(a.center, b.center);
}

// Scan every candidate whose lowest point index is i.
void scan_from(std::span<const Point> pts, int k, int i, Disk& best, bool& found) {
  const int n = static_cast<int>(pts.size());
  const int d = pts[0].dim;
  Point sub[4];
  auto try_subset = [&](int m) {
    Disk cand;
    if (!circumball(std::span<const Point>(sub, static_cast<std::size_t>(m)), cand)) return;
    if (found && cand.radius > best.radius) return;
    if (count_enclosed(cand, pts) < k) return;
    if (!found || better(cand, best)) {
      best = cand;
      found = true;
    }
  };
  sub[0] = pts[static_cast<std::size_t>(i)];
  try_subset(1);
  for (int j = i + 1; j < n; ++j) {
    sub[1] = pts[static_cast<std::size_t>(j)];
    try_subset(2);
    for (int l = j + 1; l < n; ++l) {
      sub[2] = pts[static_cast<std::size_t>(l)];
      try_subset(3);
      if (d < 3) continue;
      for (int m = l + 1; m < n; ++m) {
        sub[3] = pts[static_cast<std::size_t>(m)];
        try_subset(4);
      }
    }
  }
}

}  // namespace

Disk min_k_enclosing(std::span<const Point> pts, int k, Exec exec) {
  const int n = static_cast<int>(pts.size());
  if (k < 1 || k > n) throw std::invalid_argument("k-enclosing needs 1 <= k <= n");
  Disk best{pts[0], std::numeric_limits<double>::infinity()};
  bool found = false;
  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      Disk local{pts[0], std::numeric_limits<double>::infinity()};
      bool local_found = false;
#pragma omp for schedule(dynamic) nowait
      for (int i = 0; i < n; ++i) scan_from(pts, k, i, local, local_found);
#pragma omp critical(vg_min_k_enclosing)
      if (local_found && (!found || better(local, best))) {
        best = local;
        found = true;
      }
    }
  } else {
    for (int i = 0; i < n; ++i) scan_from(pts, k, i, best, found);
  }
  if (!found) throw DegenerateError("no enclosing candidate found");
  return best;
}

}  // namespace vg::kernels
