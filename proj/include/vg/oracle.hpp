#pragma once

// Slow, independent reference computations. Nothing here shares code with
// the sweep or the strategy builders beyond geometry primitives.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vg/best_response.hpp"
#include "vg/cone_cover.hpp"
#include "vg/geometry.hpp"

namespace vg::oracle {

// Maximum over candidate placements: every user, every pairwise boundary
// intersection nudged in 8 directions, and a grid x grid lattice over the
// bounding box of the disks. Planar only.
BestResponse brute_force_best_response(const UserSet& users, const FacilitySet& f1,
                                       int grid = 200);

// Minimum over `samples` evenly spaced directions (plane) or Fibonacci
// directions (space), plus the directions orthogonal to every point pair.
// Never below the true depth.
int tukey_depth_by_directions(const Point& x, std::span<const Point> pts, int samples = 4096);

// Disks (balls) through 2..d+1 points of `pts`, inflated by a relative
// 1e-9, that hold more than eps*n points but contain no net point.
struct PiercingReport {
  long candidates = 0;  // heavy candidates examined
  long misses = 0;
};
PiercingReport check_piercing(std::span<const Point> pts, double eps,
                              std::span<const Point> net);

// Random disks (balls) of radius >= r meeting the cluster, tested against
// the cluster's piercing points. Returns the number of unpierced samples.
long random_piercing_misses(const Disk& cluster, std::span<const Point> piercers, long samples,
                            std::mt19937_64& rng);

}  // namespace vg::oracle
