#pragma once

// Hot loops with an OpenMP driver and a plain serial reference driver.
// Both drivers call the same per-item routine, so results agree exactly;
// tests compare them and bench/ times them.

#include <span>
#include <vector>

#include "vg/geometry.hpp"

namespace vg::kernels {

enum class Exec { serial, parallel };

// Deepest open arc on the boundary of disk i, counting disk i itself.
struct ArcDepth {
  int depth = 0;
  double angle = 0.0;  // mid-angle of the deepest arc
  double width = 0.0;  // its angular width
};

// Arcs narrower than this (radians) are treated as crossings of several
// circles at one point, e.g. every C_u passing through a lone facility.
inline constexpr double kMinArc = 1e-9;

ArcDepth sweep_circle(std::span<const Disk> disks, std::size_t i);
std::vector<ArcDepth> sweep_all(std::span<const Disk> disks, Exec exec);

// Hyperplane through 2 (plane) or 3 (space) points, with the number of
// points strictly on each side. `positive` is the side the normal points to.
struct Split {
  int a = 0, b = 0, c = -1;
  Point normal;
  double offset = 0.0;  // hyperplane: dot(normal, x) == offset
  int positive = 0;
  int negative = 0;
};

std::vector<Split> hyperplane_splits(std::span<const Point> pts, Exec exec);

// Smallest disk/ball containing at least k points; ties broken by smaller
// radius, then lexicographically smaller center.
Disk min_k_enclosing(std::span<const Point> pts, int k, Exec exec);

// Closed membership used by every k-enclosing computation.
bool encloses(const Disk& d, const Point& p);
int count_enclosed(const Disk& d, std::span<const Point> pts);

}  // namespace vg::kernels
