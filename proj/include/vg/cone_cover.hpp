#pragma once

#include <vector>

#include "vg/geometry.hpp"

namespace vg {

struct ConeSet {
  std::vector<Point> directions;  // unit vectors in R^3
  double aperture = 0.0;          // full apex angle of each cone
  double certified_radius = 0.0;  // sampled covering radius, radians
  bool fallback = false;
};

// Covering radius estimate: max over `samples` quasi-random unit vectors of
// the angle to the nearest direction.
double sampled_covering_radius(const std::vector<Point>& dirs, long samples);

// Frozen 20-direction covering, certified by sampling at construction.
// With allow_fallback, a certified 32-direction set is returned if the
// primary one fails; otherwise failure throws std::runtime_error.
const ConeSet& cone_cover_directions(bool allow_fallback = false);

// Index of the direction closest in angle to v (lowest index on ties).
int nearest_direction(const ConeSet& cones, const Point& v);

}  // namespace vg
