#include "vg/p1_strategies.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numbers>

namespace vg {

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::centerpoint: return "centerpoint";
    case StrategyKind::mustafa_ray: return "mustafa_ray";
    case StrategyKind::disk_net: return "disk_net";
    case StrategyKind::ball_net: return "ball_net";
    case StrategyKind::custom: return "custom";
  }
  return "custom";
}

StrategyKind parse_strategy_kind(const std::string& text) {
  if (text == "centerpoint") return StrategyKind::centerpoint;
  if (text == "mustafa_ray" || text == "eknet") return StrategyKind::mustafa_ray;
  if (text == "disk_net" || text == "disknet") return StrategyKind::disk_net;
  if (text == "ball_net" || text == "ballnet") return StrategyKind::ball_net;
  if (text == "custom") return StrategyKind::custom;
  throw std::invalid_argument("unknown strategy '" + text + "'");
}

namespace {

std::vector<Point> dedupe_exact(std::vector<Point> pts) {
  std::vector<Point> out;
  for (const Point& p : pts)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

using Bits = std::vector<std::uint64_t>;

// Every heavy closed half-plane contains the `threshold` points extreme in its
// normal direction, so those top sets are the minimal heavy sets. They only
// change at directions orthogonal to a pair of points; one direction per arc
// between consecutive critical directions covers them all. Bits index points
// by ascending rank (y, then x).
std::vector<Bits> minimal_heavy_sets(std::span<const Point> pts, std::span<const int> rank,
                                     long threshold) {
  const std::size_t n = pts.size();
  std::vector<double> crit;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point v = pts[j] - pts[i];
      double a = std::atan2(v[1], v[0]) + std::numbers::pi / 2;
      for (int t = 0; t < 2; ++t, a += std::numbers::pi)
        crit.push_back(std::fmod(a + 4 * std::numbers::pi, 2 * std::numbers::pi));
    }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  if (crit.empty()) crit.push_back(0.0);

  const std::size_t words = (n + 63) / 64;
  const long arcs = static_cast<long>(crit.size());
  std::vector<Bits> sets(crit.size());
#pragma omp parallel
  {
    std::vector<std::size_t> idx(n);
    std::vector<double> proj(n);
#pragma omp for schedule(static)
    for (long c = 0; c < arcs; ++c) {
      const double lo = crit[static_cast<std::size_t>(c)];
      const double hi = c + 1 < arcs ? crit[static_cast<std::size_t>(c + 1)]
                                     : crit[0] + 2 * std::numbers::pi;
      const double a = 0.5 * (lo + hi);
      const Point u(std::cos(a), std::sin(a));
      for (std::size_t i = 0; i < n; ++i) {
        idx[i] = i;
        proj[i] = dot(u, pts[i]);
      }
      std::nth_element(idx.begin(), idx.begin() + (threshold - 1), idx.end(),
                       [&](std::size_t x, std::size_t y) { return proj[x] > proj[y]; });
      Bits b(words, 0);
      for (long t = 0; t < threshold; ++t) {
        const auto r = static_cast<std::size_t>(rank[idx[static_cast<std::size_t>(t)]]);
        b[r / 64] |= std::uint64_t{1} << (r % 64);
      }
      sets[static_cast<std::size_t>(c)] = std::move(b);
    }
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

// The maximin point: over all pairs of heavy half-planes, the highest among
// the lowest points of P they share. It is always a point of P.
Point maximin_point(std::span<const Point> pts, long threshold) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts[a][1] != pts[b][1] ? pts[a][1] < pts[b][1] : lex_less(pts[a], pts[b]);
  });
  std::vector<int> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = static_cast<int>(r);

  const auto sets = minimal_heavy_sets(pts, rank, threshold);
  const long m = static_cast<long>(sets.size());
  const std::size_t words = (n + 63) / 64;
  long best = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
  for (long i = 0; i < m; ++i) {
    const Bits& a = sets[static_cast<std::size_t>(i)];
    for (long j = i; j < m; ++j) {
      const Bits& b = sets[static_cast<std::size_t>(j)];
      for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t both = a[w] & b[w];
        if (both == 0) continue;
        best = std::max(best, static_cast<long>(w * 64) + std::countr_zero(both));
        break;
      }
    }
  }
  return pts[order[static_cast<std::size_t>(best)]];
}

std::vector<Point> ek_points(std::span<const Point> pts, int i, const EpsilonTable& table) {
  if (i <= 0 || pts.empty()) return {};
  if (static_cast<int>(pts.size()) <= i) return {pts.begin(), pts.end()};
  if (i == 1) return {centerpoint(pts)};

  const auto& entry = table.entries[static_cast<std::size_t>(i)];
  const long m = static_cast<long>(pts.size());
  const long threshold = std::max(1L, entry.value.ceil_mul(m));
  const Point z = maximin_point(pts, threshold);

  std::vector<Point> below, upper_left, upper_right;
  for (const Point& p : pts) {
    if (p[1] <= z[1]) below.push_back(p);
    else if (p[0] < z[0]) upper_left.push_back(p);
    else upper_right.push_back(p);
  }
  std::vector<Point> out{z};
  for (const Point& p : ek_points(below, entry.r, table)) out.push_back(p);
  for (const Point& p : ek_points(upper_left, entry.s, table)) out.push_back(p);
  for (const Point& p : ek_points(upper_right, entry.s, table)) out.push_back(p);
  return out;
}

}  // namespace

// Users themselves are avoided so that no user sits on a facility.
std::vector<Point> pad_placements(std::vector<Point> pts, std::span<const Point> users,
                                  std::size_t k) {
  double spread = 1.0;
  for (std::size_t i = 1; i < users.size(); ++i)
    spread = std::max(spread, distance(users[0], users[i]));
  const double offset = 1e-3 * spread;
  while (pts.size() < k) {
    std::size_t pick = 0;
    double far = -1.0;
    for (std::size_t i = 0; i < users.size(); ++i) {
      const double dd = pts.empty() ? 0.0 : nearest_squared_distance(users[i], pts);
      if (dd > far) {
        far = dd;
        pick = i;
      }
    }
    Point p = users[pick];
    p[0] += offset * static_cast<double>(1 + pts.size() % 7);
    while (std::find(pts.begin(), pts.end(), p) != pts.end() ||
           std::find(users.begin(), users.end(), p) != users.end())
      p[1] += offset;
    pts.push_back(p);
  }
  return pts;
}

namespace {

double snap(double x) {
  const double r = std::round(x);
  return std::abs(x - r) < 1e-9 ? r : x;
}

Strategy build_net(const UserSet& users, double epsilon, int ambient_dim,
                   bool allow_fallback_cones) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (users.dimension() != ambient_dim)
    throw std::invalid_argument("net expects dimension " + std::to_string(ambient_dim));
  const double n = static_cast<double>(users.size());
  const double limit = snap(epsilon * n);
  const int m = static_cast<int>(std::ceil(limit));
  const ConeSet* cones = ambient_dim == 3 ? &cone_cover_directions(allow_fallback_cones) : nullptr;

  Strategy st;
  st.kind = ambient_dim == 2 ? StrategyKind::disk_net : StrategyKind::ball_net;
  st.epsilon = epsilon;
  const long sectors = ambient_dim == 2 ? 6 : static_cast<long>(cones->directions.size());
  st.guarantee = std::min(Rational(1), Rational(sectors) * Rational::approximate(epsilon));

  std::vector<Point> remaining = users.points();
  std::vector<Point> net;
  while (static_cast<double>(remaining.size()) > limit) {
    if (m < 2) throw std::invalid_argument("epsilon * n must exceed 1 for a nontrivial net");
    const Disk dstar = min_k_enclosing_disk(remaining, m);
    if (!(dstar.radius > 0.0)) throw std::invalid_argument("zero-radius cluster disk");
    st.clusters.push_back(dstar);
    const auto pierce =
        ambient_dim == 2 ? pierce_disk_cluster(dstar) : pierce_ball_cluster(dstar, *cones);
    net.insert(net.end(), pierce.begin(), pierce.end());
    std::erase_if(remaining, [&](const Point& p) { return kernels::encloses(dstar, p); });
  }
  st.placements = FacilitySet(dedupe_exact(std::move(net)), Player::p1);
  return st;
}

}  // namespace

Strategy build_E_k(const UserSet& users, int k, const EpsilonTable& table) {
  if (users.dimension() != 2) throw std::invalid_argument("E_k is built in the plane only");
  if (table.dimension != 2) throw std::invalid_argument("E_k needs a planar epsilon table");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k > table.kmax()) throw std::out_of_range("table does not cover k=" + std::to_string(k));
  if (users.empty()) throw std::invalid_argument("E_k of an empty user set");

  auto pts = dedupe_exact(ek_points(users.points(), k, table));
  if (static_cast<int>(pts.size()) > k) pts.resize(static_cast<std::size_t>(k));
  pts = pad_placements(std::move(pts), users.points(), static_cast<std::size_t>(k));
  if (static_cast<int>(pts.size()) != k)
    throw DegenerateError("E_k produced fewer than k distinct points");

  Strategy st;
  st.kind = k == 1 ? StrategyKind::centerpoint : StrategyKind::mustafa_ray;
  st.placements = FacilitySet(std::move(pts), Player::p1);
  st.guarantee = table.epsilon(k);
  return st;
}

Disk min_k_enclosing_disk(std::span<const Point> pts, int k, kernels::Exec exec) {
  return kernels::min_k_enclosing(pts, k, exec);
}

std::vector<Point> pierce_disk_cluster(const Disk& dstar, double anchor) {
  if (dstar.center.dim != 2) throw std::invalid_argument("disk cluster expects a planar disk");
  if (!(dstar.radius > 0.0)) return {dstar.center};
  std::vector<Point> out{dstar.center};
  const double reach = std::sqrt(3.0) * dstar.radius;
  for (int m = 0; m < 6; ++m) {
    const double a = anchor + std::numbers::pi / 6 + m * std::numbers::pi / 3;
    out.push_back(dstar.center + reach * Point(std::cos(a), std::sin(a)));
  }
  return out;
}

std::vector<Point> pierce_ball_cluster(const Disk& bstar, const ConeSet& cones) {
  if (bstar.center.dim != 3) throw std::invalid_argument("ball cluster expects a ball in space");
  if (!(bstar.radius > 0.0)) return {bstar.center};
  std::vector<Point> out{bstar.center};
  const double reach = std::sqrt(3.0) * bstar.radius;
  for (const Point& axis : cones.directions) out.push_back(bstar.center + reach * axis);
  return out;
}

Strategy build_disk_net(const UserSet& users, double epsilon) {
  return build_net(users, epsilon, 2, false);
}

Strategy build_ball_net(const UserSet& users, double epsilon, bool allow_fallback_cones) {
  return build_net(users, epsilon, 3, allow_fallback_cones);
}

}  // namespace vg
