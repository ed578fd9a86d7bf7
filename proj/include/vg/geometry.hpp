#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vg {

// Absolute tolerance for predicates on decision boundaries.
inline constexpr double kTolerance = 1e-9;

// Raised when an input sits on a decision boundary we refuse to guess about.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  std::array<double, 3> c{};
  int dim = 2;

  Point() = default;
  Point(double x, double y) : c{x, y, 0.0}, dim(2) {}
  Point(double x, double y, double z) : c{x, y, z}, dim(3) {}

  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double x() const { return c[0]; }
  double y() const { return c[1]; }
  double z() const { return c[2]; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.dim == b.dim && a.c == b.c;
  }
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& a);
double dot(const Point& a, const Point& b);
double norm(const Point& a);
Point normalized(const Point& a);
Point cross(const Point& a, const Point& b);  // 3D only
bool lex_less(const Point& a, const Point& b);
bool is_finite(const Point& p);
std::string to_string(const Point& p);

double squared_distance(const Point& p, const Point& q);
double distance(const Point& p, const Point& q);

// Sign-carrying determinants. orient2d > 0 for a counter-clockwise turn.
double orient2d(const Point& a, const Point& b, const Point& c);
double incircle(const Point& a, const Point& b, const Point& c, const Point& d);
double orient3d(const Point& a, const Point& b, const Point& c, const Point& d);
double insphere(const Point& a, const Point& b, const Point& c, const Point& d,
                const Point& e);

bool in_general_position(std::span<const Point> pts, double tol = kTolerance);

class UserSet {
 public:
  UserSet() = default;
  // Throws std::invalid_argument on mixed or unsupported dimensions,
  // non-finite coordinates, or coincident users.
  explicit UserSet(std::vector<Point> users, bool check_general_position = true);

  int dimension() const { return dim_; }
  std::size_t size() const { return users_.size(); }
  bool empty() const { return users_.empty(); }
  const std::vector<Point>& points() const { return users_; }
  const Point& operator[](std::size_t i) const { return users_[i]; }
  bool general_position() const { return general_position_; }

 private:
  std::vector<Point> users_;
  int dim_ = 2;
  bool general_position_ = false;
};

enum class Player { p1, p2 };

class FacilitySet {
 public:
  FacilitySet() = default;
  FacilitySet(std::vector<Point> facilities, Player owner);

  Player owner() const { return owner_; }
  std::size_t size() const { return facilities_.size(); }
  bool empty() const { return facilities_.empty(); }
  const std::vector<Point>& points() const { return facilities_; }
  const Point& operator[](std::size_t i) const { return facilities_[i]; }
  bool contains(const Point& p) const;

 private:
  std::vector<Point> facilities_;
  Player owner_ = Player::p1;
};

// Also serves as a ball when center.dim == 3.
struct Disk {
  Point center;
  double radius = 0.0;

  bool contains_open(const Point& p) const;
  // Closed membership with absolute slack `tol` on the radius.
  bool contains_closed(const Point& p, double tol = kTolerance) const;
};

struct PayoffRecord {
  int p2_count = 0;
  int p1_count = 0;
  std::vector<int> served_by_p2;
};

// Users strictly closer to F2 than to F1 go to P2; ties stay with P1.
PayoffRecord payoff(const UserSet& users, const FacilitySet& f1, const FacilitySet& f2);

double nearest_squared_distance(const Point& p, std::span<const Point> sites);

int tukey_depth(const Point& x, std::span<const Point> pts);
int tukey_depth(const Point& x, const UserSet& users);

// Smallest disk/ball through or around 1..d+1 points.
Disk min_enclosing_disk_of_subset(std::span<const Point> pts);
// Circumscribed ball of affinely independent points, in their affine hull.
// Returns false when the points are (numerically) dependent.
bool circumball(std::span<const Point> pts, Disk& out);

std::vector<Point> read_points_csv(std::istream& in);
std::vector<Point> read_points_csv_file(const std::string& path);
void write_points_csv(std::ostream& out, std::span<const Point> pts);

}  // namespace vg
