#include "vg/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include "vg/cone_cover.hpp"

namespace vg {

std::string to_string(ResponseMethod m) {
  switch (m) {
    case ResponseMethod::arrangement_sweep: return "arrangement_sweep";
    case ResponseMethod::brute_force: return "brute_force";
    case ResponseMethod::halfcell: return "halfcell";
    case ResponseMethod::candidate_enumeration: return "candidate_enumeration";
  }
  return "unknown";
}

std::vector<Disk> nearest_facility_disks(const UserSet& users, const FacilitySet& f1) {
  if (f1.empty()) throw std::invalid_argument("F1 must be nonempty");
  std::vector<Disk> disks;
  disks.reserve(users.size());
  for (const Point& u : users.points())
    disks.push_back({u, std::sqrt(nearest_squared_distance(u, f1.points()))});
  return disks;
}

namespace {

// Indices of the disks a candidate point would take.
using Counter = std::function<std::vector<int>(const Point&)>;

Counter open_disk_counter(std::span<const Disk> disks) {
  return [disks](const Point& p) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < disks.size(); ++i)
      if (disks[i].contains_open(p)) idx.push_back(static_cast<int>(i));
    return idx;
  };
}

BestResponse empty_response(std::span<const Disk> disks, const FacilitySet& forbidden,
                            ResponseMethod method) {
  // Nothing can be served; any point off the facilities will do.
  double far = 0.0;
  for (const Disk& d : disks) far = std::max(far, std::abs(d.center[0]) + d.radius);
  for (const Point& f : forbidden.points()) far = std::max(far, std::abs(f[0]));
  Point p = disks.empty() ? Point(far + 1.0, 0.0) : disks[0].center;
  p[0] = far + 1.0;
  while (forbidden.contains(p)) p[0] += 1.0;
  return {p, 0, {}, method};
}

BestResponse sweep_response(std::span<const Disk> disks, const FacilitySet& forbidden,
                            kernels::Exec exec, const Counter& covering) {
  const auto arcs = kernels::sweep_all(disks, exec);
  std::vector<std::size_t> order(disks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Deepest first; lowest disk index breaks ties.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return arcs[a].depth > arcs[b].depth;
  });
  for (std::size_t i : order) {
    if (arcs[i].depth <= 0) break;
    const Disk& d = disks[i];
    const Point dir(std::cos(arcs[i].angle), std::sin(arcs[i].angle));
    double eta = std::min(1e-7, 0.1 * arcs[i].width) * d.radius;
    for (int attempt = 0; attempt < 8; ++attempt, eta /= 16.0) {
      const Point p = d.center + (d.radius - eta) * dir;
      if (forbidden.contains(p)) continue;
      auto served = covering(p);
      if (static_cast<int>(served.size()) >= arcs[i].depth) {
        const int pay = static_cast<int>(served.size());
        return {p, pay, std::move(served), ResponseMethod::arrangement_sweep};
      }
    }
  }
  bool any_positive = std::any_of(disks.begin(), disks.end(),
                                  [](const Disk& d) { return d.radius > 0.0; });
  if (any_positive) throw DegenerateError("could not place a witness in the deepest face");
  return empty_response(disks, forbidden, ResponseMethod::arrangement_sweep);
}

// Intersection points of three spheres; returns how many were written.
int sphere_triple(const Disk& a, const Disk& b, const Disk& c, Point out[2]) {
  auto plane = [](const Disk& p, const Disk& q, Point& n, double& off) {
    n = 2.0 * (q.center - p.center);
    off = p.radius * p.radius - q.radius * q.radius + dot(q.center, q.center) -
          dot(p.center, p.center);
  };
  Point n1, n2;
  double b1, b2;
  plane(a, b, n1, b1);
  plane(a, c, n2, b2);
  const Point w = cross(n1, n2);
  const double ww = dot(w, w);
  if (ww < 1e-18) return 0;
  const double g11 = dot(n1, n1), g12 = dot(n1, n2), g22 = dot(n2, n2);
  const double det = g11 * g22 - g12 * g12;
  if (std::abs(det) < 1e-18) return 0;
  const double al = (b1 * g22 - b2 * g12) / det;
  const double be = (b2 * g11 - b1 * g12) / det;
  const Point x0 = al * n1 + be * n2;
  const Point v = x0 - a.center;
  const double qa = ww, qb = 2.0 * dot(v, w), qc = dot(v, v) - a.radius * a.radius;
  const double disc = qb * qb - 4 * qa * qc;
  if (disc < 0) return 0;
  const double sq = std::sqrt(disc);
  out[0] = x0 + ((-qb - sq) / (2 * qa)) * w;
  out[1] = x0 + ((-qb + sq) / (2 * qa)) * w;
  return 2;
}

Point unit_or_zero(const Point& v) {
  const double n = norm(v);
  return n > 0 ? (1.0 / n) * v : v;
}

BestResponse enumerate_response(std::span<const Disk> disks, const FacilitySet& forbidden,
                                kernels::Exec exec, const Counter& covering) {
  const int n = static_cast<int>(disks.size());
  auto alive = [&](int i) { return disks[static_cast<std::size_t>(i)].radius > 0.0; };
  auto meets = [&](int i, int j) {
    const Disk& a = disks[static_cast<std::size_t>(i)];
    const Disk& b = disks[static_cast<std::size_t>(j)];
    return distance(a.center, b.center) < a.radius + b.radius;
  };

  auto candidates_from = [&](int i, std::vector<Point>& out) {
    if (!alive(i)) return;
    const Disk& a = disks[static_cast<std::size_t>(i)];
    out.push_back(a.center);
    for (int j = i + 1; j < n; ++j) {
      if (!alive(j) || !meets(i, j)) continue;
      const Disk& b = disks[static_cast<std::size_t>(j)];
      const double D = distance(a.center, b.center);
      if (D == 0.0) continue;
      const Point axis = (1.0 / D) * (b.center - a.center);
      // Middle of the lens along the centre line.
      out.push_back(a.center + (0.5 * (D - b.radius + a.radius)) * axis);
      const double eta = 1e-7 * std::min(a.radius, b.radius);
      const double t = (D * D + a.radius * a.radius - b.radius * b.radius) / (2 * D);
      const double h2 = a.radius * a.radius - t * t;
      if (h2 > 0) {
        const double h = std::sqrt(h2);
        const Point ref = std::abs(axis[0]) < 0.9 ? Point(1, 0, 0) : Point(0, 1, 0);
        const Point e1 = normalized(cross(axis, ref));
        const Point e2 = cross(axis, e1);
        const Point mid = a.center + t * axis;
        for (int s = 0; s < 8; ++s) {
          const double th = s * std::numbers::pi / 4;
          const Point p = mid + (h * std::cos(th)) * e1 + (h * std::sin(th)) * e2;
          const Point in = unit_or_zero((a.center - p) + (b.center - p));
          out.push_back(p + eta * in);
        }
      }
      for (int k = j + 1; k < n; ++k) {
        if (!alive(k) || !meets(i, k) || !meets(j, k)) continue;
        const Disk& c = disks[static_cast<std::size_t>(k)];
        Point x[2];
        const int m = sphere_triple(a, b, c, x);
        const double eta3 = 1e-7 * std::min({a.radius, b.radius, c.radius});
        for (int q = 0; q < m; ++q) {
          const Point na = unit_or_zero(x[q] - a.center);
          const Point nb = unit_or_zero(x[q] - b.center);
          const Point nc = unit_or_zero(x[q] - c.center);
          for (int sgn = 0; sgn < 8; ++sgn) {
            const Point dirv = ((sgn & 1) ? 1.0 : -1.0) * na + ((sgn & 2) ? 1.0 : -1.0) * nb +
                               ((sgn & 4) ? 1.0 : -1.0) * nc;
            out.push_back(x[q] + eta3 * unit_or_zero(dirv));
          }
        }
      }
    }
  };

  struct Scored {
    Point p;
    int depth = -1;
  };
  auto score_from = [&](int i) {
    std::vector<Point> cands;
    candidates_from(i, cands);
    Scored best;
    for (const Point& p : cands) {
      if (forbidden.contains(p)) continue;
      const int dep = static_cast<int>(covering(p).size());
      if (dep > best.depth || (dep == best.depth && lex_less(p, best.p))) best = {p, dep};
    }
    return best;
  };
  std::vector<Scored> per(static_cast<std::size_t>(n));
  if (exec == kernels::Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) per[static_cast<std::size_t>(i)] = score_from(i);
  } else {
    for (int i = 0; i < n; ++i) per[static_cast<std::size_t>(i)] = score_from(i);
  }
  Scored best;
  for (const Scored& s : per)
    if (s.depth > best.depth) best = s;  // lowest index wins ties
  if (best.depth <= 0)
    return empty_response(disks, forbidden, ResponseMethod::candidate_enumeration);
  auto served = covering(best.p);
  return {best.p, static_cast<int>(served.size()), std::move(served),
          ResponseMethod::candidate_enumeration};
}

}  // namespace

BestResponse max_depth_point(std::span<const Disk> disks, const FacilitySet& forbidden,
                             kernels::Exec exec) {
  if (disks.empty()) throw std::invalid_argument("max_depth_point needs at least one disk");
  const Counter count = open_disk_counter(disks);
  if (disks[0].center.dim == 2) return sweep_response(disks, forbidden, exec, count);
  return enumerate_response(disks, forbidden, exec, count);
}

BestResponse best_response(const UserSet& users, const FacilitySet& f1, kernels::Exec exec) {
  const auto disks = nearest_facility_disks(users, f1);
  // Witnesses are accepted with the payoff predicate itself, comparing
  // against the squared nearest distance rather than a rounded radius.
  std::vector<double> reach(users.size());
  for (std::size_t i = 0; i < users.size(); ++i)
    reach[i] = nearest_squared_distance(users[i], f1.points());
  const Counter count = [&](const Point& p) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < users.size(); ++i)
      if (squared_distance(p, users[i]) < reach[i]) idx.push_back(static_cast<int>(i));
    return idx;
  };
  BestResponse r = users.dimension() == 2 ? sweep_response(disks, f1, exec, count)
                                          : enumerate_response(disks, f1, exec, count);
  const auto check = payoff(users, f1, FacilitySet({r.location}, Player::p2));
  if (check.p2_count != r.payoff)
    throw DegenerateError("best response recount disagrees with disk depth at " +
                          to_string(r.location));
  r.served = check.served_by_p2;
  return r;
}

namespace {

// Unit normal maximising the number of vectors strictly on its positive side.
Point best_open_side(const std::vector<Point>& vs) {
  if (vs.size() == 1) return normalized(vs[0]);
  int best = -1;
  Point best_dir;
  auto probe = [&](const Point& u) {
    int c = 0;
    for (const Point& v : vs)
      if (dot(v, u) > 0.0) ++c;
    if (c > best) {
      best = c;
      best_dir = u;
    }
  };
  if (vs[0].dim == 2) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> crit;
    for (const Point& v : vs) {
      const double phi = std::atan2(v[1], v[0]);
      for (double a : {phi + std::numbers::pi / 2, phi - std::numbers::pi / 2}) {
        a = std::fmod(a, two_pi);
        if (a < 0) a += two_pi;
        crit.push_back(a);
      }
    }
    std::sort(crit.begin(), crit.end());
    for (std::size_t i = 0; i < crit.size(); ++i) {
      const double a = crit[i];
      const double b = i + 1 < crit.size() ? crit[i + 1] : crit[0] + two_pi;
      if (b - a <= 1e-12) continue;
      const double mid = 0.5 * (a + b);
      probe(Point(std::cos(mid), std::sin(mid)));
    }
  } else {
    std::vector<Point> us;
    for (const Point& v : vs) us.push_back(normalized(v));
    for (double eta : {1e-4, 1e-7})
      for (std::size_t i = 0; i < us.size(); ++i) {
        probe(normalized(us[i] + Point(eta, 2 * eta, 3 * eta)));
        for (std::size_t j = i + 1; j < us.size(); ++j) {
          const Point w = cross(us[i], us[j]);
          if (norm(w) < 1e-12) continue;
          const Point wn = normalized(w);
          for (double s : {1.0, -1.0})
            for (double a : {1.0, -1.0})
              for (double b : {1.0, -1.0})
                probe(normalized(s * wn + (a * eta) * us[i] + (b * eta) * us[j]));
        }
      }
  }
  return best_dir;
}

}  // namespace

BestResponse halfcell_response(const UserSet& users, const FacilitySet& f1) {
  if (f1.empty()) throw std::invalid_argument("F1 must be nonempty");
  if (users.empty()) throw std::invalid_argument("U must be nonempty");
  const std::size_t k = f1.size();
  // Closed cells: a user on a bisector belongs to both neighbours.
  std::vector<std::vector<int>> cell(k);
  for (std::size_t i = 0; i < users.size(); ++i) {
    const double m = nearest_squared_distance(users[i], f1.points());
    for (std::size_t j = 0; j < k; ++j)
      if (squared_distance(users[i], f1[j]) == m) cell[j].push_back(static_cast<int>(i));
  }
  std::size_t j = 0;
  for (std::size_t t = 1; t < k; ++t)
    if (cell[t].size() > cell[j].size()) j = t;
  const Point& fj = f1[j];

  std::vector<Point> vs;
  std::vector<int> members;
  for (int i : cell[j]) {
    const Point v = users[static_cast<std::size_t>(i)] - fj;
    if (norm(v) <= kTolerance) continue;  // a user on the facility cannot be taken
    vs.push_back(v);
    members.push_back(i);
  }
  if (vs.empty()) {
    // Degenerate: every user of the cell sits on the facility.
    const Point p = empty_response(std::vector<Disk>{{fj, 0.0}}, f1, ResponseMethod::halfcell).location;
    auto rec = payoff(users, f1, FacilitySet({p}, Player::p2));
    return {p, rec.p2_count, std::move(rec.served_by_p2), ResponseMethod::halfcell};
  }
  const Point nu = best_open_side(vs);
  std::vector<int> target;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < vs.size(); ++a) {
    const double pr = dot(vs[a], nu);
    if (pr > 0.0) {
      target.push_back(members[a]);
      margin = std::min(margin, pr);
    }
  }
  std::sort(target.begin(), target.end());
  double gap = margin;
  for (std::size_t t = 0; t < k; ++t)
    if (t != j) gap = std::min(gap, distance(f1[t], fj));
  double delta = 0.5 * gap;
  for (int attempt = 0; attempt < 64; ++attempt, delta *= 0.5) {
    const Point p = fj + delta * nu;
    if (f1.contains(p)) continue;
    auto rec = payoff(users, f1, FacilitySet({p}, Player::p2));
    if (rec.served_by_p2 == target)
      return {p, rec.p2_count, std::move(rec.served_by_p2), ResponseMethod::halfcell};
  }
  throw DegenerateError("no step size reproduces the targeted half cell");
}

Disk sector_witness(const UserSet& users, const FacilitySet& f1, const BestResponse& response) {
  (void)f1;
  if (response.served.empty()) throw std::invalid_argument("sector witness needs served users");
  const Point& apex = response.location;
  const int d = users.dimension();
  const ConeSet* cones = d == 3 ? &cone_cover_directions() : nullptr;
  const int sectors = d == 2 ? 6 : static_cast<int>(cones->directions.size());
  std::vector<std::vector<int>> bucket(static_cast<std::size_t>(sectors));
  for (int i : response.served) {
    const Point v = users[static_cast<std::size_t>(i)] - apex;
    int s = 0;
    if (d == 2) {
      double th = std::atan2(v[1], v[0]);
      if (th < 0) th += 2 * std::numbers::pi;
      s = std::min(5, static_cast<int>(th / (std::numbers::pi / 3)));
    } else if (norm(v) > 0.0) {
      s = nearest_direction(*cones, v);
    }  // a user at the apex lies on every witness sphere; sector 0 is as good as any
    bucket[static_cast<std::size_t>(s)].push_back(i);
  }
  std::size_t lam = 0;
  for (std::size_t s = 1; s < bucket.size(); ++s)
    if (bucket[s].size() > bucket[lam].size()) lam = s;
  int far = bucket[lam][0];
  double far_d = -1.0;
  for (int i : bucket[lam]) {
    const double dd = squared_distance(users[static_cast<std::size_t>(i)], apex);
    if (dd > far_d) {
      far_d = dd;
      far = i;
    }
  }
  return {users[static_cast<std::size_t>(far)], std::sqrt(far_d)};
}

int count_users_in(const Disk& disk, const UserSet& users) {
  int c = 0;
  for (const Point& u : users.points())
    if (disk.contains_closed(u, 1e-9 * std::max(1.0, disk.radius))) ++c;
  return c;
}

int count_facilities_in(const Disk& disk, const FacilitySet& f1) {
  int c = 0;
  for (const Point& f : f1.points())
    if (squared_distance(disk.center, f) <= disk.radius * disk.radius) ++c;
  return c;
}

}  // namespace vg
