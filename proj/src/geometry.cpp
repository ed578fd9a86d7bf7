#include "vg/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace vg {

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim != b.dim) {
    throw std::invalid_argument("dimension mismatch: " + to_string(a) + " vs " +
                                to_string(b));
  }
}

Point make_like(const Point& proto) {
  Point p;
  p.dim = proto.dim;
  return p;
}

}  // namespace

Point operator+(const Point& a, const Point& b) {
  Point r = make_like(a);
  for (int i = 0; i < 3; ++i) r[i] = a[i] + b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  Point r = make_like(a);
  for (int i = 0; i < 3; ++i) r[i] = a[i] - b[i];
  return r;
}

Point operator*(double s, const Point& a) {
  Point r = make_like(a);
  for (int i = 0; i < 3; ++i) r[i] = s * a[i];
  return r;
}

double dot(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

Point normalized(const Point& a) {
  const double n = norm(a);
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  return (1.0 / n) * a;
}

Point cross(const Point& a, const Point& b) {
  return Point(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
               a[0] * b[1] - a[1] * b[0]);
}

bool lex_less(const Point& a, const Point& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.c < b.c;
}

bool is_finite(const Point& p) {
  return std::isfinite(p[0]) && std::isfinite(p[1]) && std::isfinite(p[2]);
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << p[0] << ',' << p[1];
  if (p.dim == 3) os << ',' << p[2];
  os << ')';
  return os.str();
}

double squared_distance(const Point& p, const Point& q) {
  require_same_dim(p, q);
  double s = 0.0;
  for (int i = 0; i < p.dim; ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

double distance(const Point& p, const Point& q) { return std::sqrt(squared_distance(p, q)); }

double orient2d(const Point& a, const Point& b, const Point& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

double incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double adx = a[0] - d[0], ady = a[1] - d[1];
  const double bdx = b[0] - d[0], bdy = b[1] - d[1];
  const double cdx = c[0] - d[0], cdy = c[1] - d[1];
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) - blift * (adx * cdy - cdx * ady) +
         clift * (adx * bdy - bdx * ady);
}

double orient3d(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Point u = b - a, v = c - a, w = d - a;
  return dot(u, cross(v, w));
}

double insphere(const Point& a, const Point& b, const Point& c, const Point& d,
                const Point& e) {
  const Point pts[4] = {a - e, b - e, c - e, d - e};
  double m[4][4];
  for (int r = 0; r < 4; ++r) {
    m[r][0] = pts[r][0];
    m[r][1] = pts[r][1];
    m[r][2] = pts[r][2];
    m[r][3] = dot(pts[r], pts[r]);
  }
  // Laplace expansion along the last column.
  auto det3 = [&](int skip) {
    int rows[3], k = 0;
    for (int r = 0; r < 4; ++r)
      if (r != skip) rows[k++] = r;
    const double* x = m[rows[0]];
    const double* y = m[rows[1]];
    const double* z = m[rows[2]];
    return x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) +
           x[2] * (y[0] * z[1] - y[1] * z[0]);
  };
  double det = 0.0;
  for (int r = 0; r < 4; ++r) {
    const double sign = ((r + 3) % 2 == 0) ? 1.0 : -1.0;
    det += sign * m[r][3] * det3(r);
  }
  return det;
}

bool in_general_position(std::span<const Point> pts, double tol) {
  const long n = static_cast<long>(pts.size());
  if (n == 0) return true;
  const int d = pts[0].dim;
  bool ok = true;
  if (d == 2) {
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (long i = 0; i < n; ++i) {
      for (long j = i + 1; j < n && ok; ++j)
        for (long k = j + 1; k < n && ok; ++k) {
          if (std::abs(orient2d(pts[i], pts[j], pts[k])) <= tol) {
            ok = false;
            break;
          }
          for (long l = k + 1; l < n; ++l)
            if (std::abs(incircle(pts[i], pts[j], pts[k], pts[l])) <= tol) {
              ok = false;
              break;
            }
        }
    }
  } else {
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (long i = 0; i < n; ++i) {
      for (long j = i + 1; j < n && ok; ++j)
        for (long k = j + 1; k < n && ok; ++k)
          for (long l = k + 1; l < n && ok; ++l) {
            if (std::abs(orient3d(pts[i], pts[j], pts[k], pts[l])) <= tol) {
              ok = false;
              break;
            }
            for (long m = l + 1; m < n; ++m)
              if (std::abs(insphere(pts[i], pts[j], pts[k], pts[l], pts[m])) <= tol) {
                ok = false;
                break;
              }
          }
    }
  }
  return ok;
}

UserSet::UserSet(std::vector<Point> users, bool check_general_position)
    : users_(std::move(users)) {
  if (!users_.empty()) dim_ = users_.front().dim;
  if (dim_ != 2 && dim_ != 3) throw std::invalid_argument("dimension must be 2 or 3");
  for (std::size_t i = 0; i < users_.size(); ++i) {
    if (users_[i].dim != dim_)
      throw std::invalid_argument("user " + std::to_string(i) + " has dimension " +
                                  std::to_string(users_[i].dim) + ", expected " +
                                  std::to_string(dim_));
    if (!is_finite(users_[i]))
      throw std::invalid_argument("user " + std::to_string(i) + " is not finite");
  }
  std::vector<Point> sorted = users_;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw std::invalid_argument("coincident users at " + to_string(sorted[i]));
  general_position_ = check_general_position && in_general_position(users_);
}

FacilitySet::FacilitySet(std::vector<Point> facilities, Player owner)
    : facilities_(std::move(facilities)), owner_(owner) {
  for (std::size_t i = 0; i < facilities_.size(); ++i) {
    if (!is_finite(facilities_[i]))
      throw std::invalid_argument("facility " + std::to_string(i) + " is not finite");
    for (std::size_t j = 0; j < i; ++j) {
      require_same_dim(facilities_[i], facilities_[j]);
      if (facilities_[i] == facilities_[j])
        throw std::invalid_argument("duplicate facility at " + to_string(facilities_[i]));
    }
  }
}

bool FacilitySet::contains(const Point& p) const {
  return std::find(facilities_.begin(), facilities_.end(), p) != facilities_.end();
}

bool Disk::contains_open(const Point& p) const {
  return squared_distance(center, p) < radius * radius;
}

bool Disk::contains_closed(const Point& p, double tol) const {
  return distance(center, p) <= radius + tol;
}

double nearest_squared_distance(const Point& p, std::span<const Point> sites) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& s : sites) best = std::min(best, squared_distance(p, s));
  return best;
}

PayoffRecord payoff(const UserSet& users, const FacilitySet& f1, const FacilitySet& f2) {
  if (f1.empty()) throw std::invalid_argument("payoff requires a nonempty F1");
  for (const Point& f : f1.points()) {
    if (f.dim != users.dimension()) throw std::invalid_argument("F1 dimension mismatch");
    if (f2.contains(f)) throw std::invalid_argument("facility collision at " + to_string(f));
  }
  for (const Point& f : f2.points())
    if (f.dim != users.dimension()) throw std::invalid_argument("F2 dimension mismatch");

  PayoffRecord rec;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (f2.empty()) break;
    const double d1 = nearest_squared_distance(users[i], f1.points());
    const double d2 = nearest_squared_distance(users[i], f2.points());
    if (d2 < d1) rec.served_by_p2.push_back(static_cast<int>(i));
  }
  rec.p2_count = static_cast<int>(rec.served_by_p2.size());
  rec.p1_count = static_cast<int>(users.size()) - rec.p2_count;
  return rec;
}

namespace {

int closed_halfspace_count(const Point& x, std::span<const Point> pts, const Point& u) {
  int c = 0;
  for (const Point& p : pts)
    if (dot(p - x, u) >= -kTolerance) ++c;
  return c;
}

int tukey_depth_2d(const Point& x, std::span<const Point> pts) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> crit;
  int coincident = 0;
  for (const Point& p : pts) {
    const Point v = p - x;
    if (v[0] == 0.0 && v[1] == 0.0) {
      ++coincident;
      continue;
    }
    const double phi = std::atan2(v[1], v[0]);
    for (double a : {phi + std::numbers::pi / 2, phi - std::numbers::pi / 2}) {
      a = std::fmod(a, two_pi);
      if (a < 0) a += two_pi;
      crit.push_back(a);
    }
  }
  if (crit.empty()) return coincident;
  std::sort(crit.begin(), crit.end());
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const double a = crit[i];
    const double b = (i + 1 < crit.size()) ? crit[i + 1] : crit[0] + two_pi;
    if (b - a <= 0.0) continue;
    const double mid = 0.5 * (a + b);
    best = std::min(best, closed_halfspace_count(x, pts, Point(std::cos(mid), std::sin(mid))));
  }
  // Directions exactly at a critical angle put a point on the boundary, which
  // only adds to the closed count, so the open arcs attain the minimum.
  return best == std::numeric_limits<int>::max() ? static_cast<int>(pts.size()) : best;
}

int tukey_depth_3d(const Point& x, std::span<const Point> pts) {
  std::vector<Point> dirs;
  int coincident = 0;
  for (const Point& p : pts) {
    const Point v = p - x;
    if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0) {
      ++coincident;
      continue;
    }
    dirs.push_back(normalized(v));
  }
  if (dirs.empty()) return coincident;

  int best = static_cast<int>(pts.size());
  auto probe = [&](const Point& u) {
    const double n = norm(u);
    if (n < 1e-12) return;
    best = std::min(best, closed_halfspace_count(x, pts, (1.0 / n) * u));
  };
  bool any_vertex = false;
  for (double eta : {1e-4, 1e-7}) {
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      probe(-1.0 * dirs[i] + Point(eta, 2 * eta, 3 * eta));
      for (std::size_t j = i + 1; j < dirs.size(); ++j) {
        const Point w = cross(dirs[i], dirs[j]);
        if (norm(w) < 1e-12) continue;
        any_vertex = true;
        const Point wn = normalized(w);
        for (double s : {1.0, -1.0})
          for (double a : {1.0, -1.0})
            for (double b : {1.0, -1.0}) probe(s * wn + (a * eta) * dirs[i] + (b * eta) * dirs[j]);
      }
    }
  }
  if (!any_vertex) {
    // All directions are parallel: any plane through x containing the line
    // leaves one open side empty of the rest.
    Point e = std::abs(dirs[0][0]) < 0.9 ? Point(1, 0, 0) : Point(0, 1, 0);
    const Point perp = normalized(cross(dirs[0], e));
    probe(perp);
    probe(-1.0 * perp);
  }
  return best;
}

}  // namespace

int tukey_depth(const Point& x, std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("tukey_depth needs a nonempty point set");
  require_same_dim(x, pts[0]);
  return x.dim == 2 ? tukey_depth_2d(x, pts) : tukey_depth_3d(x, pts);
}

int tukey_depth(const Point& x, const UserSet& users) { return tukey_depth(x, users.points()); }

bool circumball(std::span<const Point> pts, Disk& out) {
  const std::size_t m = pts.size();
  if (m == 0) return false;
  const Point& a = pts[0];
  if (m == 1) {
    out = {a, 0.0};
    return true;
  }
  // Solve G λ = ½ diag(G) for the circumcenter a + Σ λ_k e_k.
  const std::size_t k = m - 1;
  double g[3][4] = {};
  Point e[3];
  for (std::size_t i = 0; i < k; ++i) e[i] = pts[i + 1] - a;
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) g[i][j] = dot(e[i], e[j]);
    g[i][k] = 0.5 * g[i][i];
    scale = std::max(scale, g[i][i]);
  }
  if (scale == 0.0) return false;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    if (std::abs(g[piv][col]) <= 1e-12 * scale) return false;
    for (std::size_t c = 0; c <= k; ++c) std::swap(g[col][c], g[piv][c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = g[r][col] / g[col][col];
      for (std::size_t c = col; c <= k; ++c) g[r][c] -= f * g[col][c];
    }
  }
  Point center = a;
  for (std::size_t i = 0; i < k; ++i) center = center + (g[i][k] / g[i][i]) * e[i];
  out = {center, distance(center, a)};
  return std::isfinite(out.radius);
}

Disk min_enclosing_disk_of_subset(std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("enclosing disk of an empty set");
  const int d = pts[0].dim;
  if (pts.size() > static_cast<std::size_t>(d + 1))
    throw std::invalid_argument("at most d+1 points expected");
  const unsigned m = static_cast<unsigned>(pts.size());
  Disk best{pts[0], std::numeric_limits<double>::infinity()};
  std::vector<Point> sub;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    sub.clear();
    for (unsigned i = 0; i < m; ++i)
      if (mask & (1u << i)) sub.push_back(pts[i]);
    Disk cand;
    if (!circumball(sub, cand)) continue;
    if (cand.radius >= best.radius) continue;
    bool all = true;
    for (const Point& p : pts)
      if (distance(cand.center, p) > cand.radius * (1 + 1e-12) + 1e-15) {
        all = false;
        break;
      }
    if (all) best = cand;
  }
  return best;
}

std::vector<Point> read_points_csv(std::istream& in) {
  std::vector<Point> out;
  std::string line;
  int lineno = 0;
  int dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> vals;
    std::size_t start = 0;
    int field = 0;
    while (true) {
      ++field;
      const std::size_t comma = line.find(',', start);
      std::string tok = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
      const auto b = tok.find_first_not_of(" \t");
      const auto e = tok.find_last_not_of(" \t");
      tok = b == std::string::npos ? "" : tok.substr(b, e - b + 1);
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size() ||
          !std::isfinite(v))
        throw ParseError("line " + std::to_string(lineno) + ", field " +
                         std::to_string(field) + ": not a finite decimal number: '" + tok +
                         "'");
      vals.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (vals.size() != 2 && vals.size() != 3)
      throw ParseError("line " + std::to_string(lineno) + ": expected 2 or 3 fields, got " +
                       std::to_string(vals.size()));
    if (dim == 0) dim = static_cast<int>(vals.size());
    if (static_cast<int>(vals.size()) != dim)
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(dim) + " fields, got " + std::to_string(vals.size()));
    out.push_back(dim == 2 ? Point(vals[0], vals[1]) : Point(vals[0], vals[1], vals[2]));
  }
  return out;
}

std::vector<Point> read_points_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_points_csv(in);
}

void write_points_csv(std::ostream& out, std::span<const Point> pts) {
  char buf[64];
  for (const Point& p : pts) {
    for (int i = 0; i < p.dim; ++i) {
      const auto res = std::to_chars(buf, buf + sizeof buf, p[i]);
      if (i) out << ',';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace vg
