#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vg/game_engine.hpp"

namespace vg::test {

inline UserSet make_users(int n, std::uint64_t seed, int dim = 2,
                          Distribution dist = Distribution::uniform_square) {
  InstanceSpec spec;
  spec.n = n;
  spec.seed = seed;
  spec.dimension = dim;
  spec.distribution = dist;
  return generate_users(spec);
}

inline Distribution nth_distribution(int i) {
  static const Distribution all[] = {Distribution::uniform_square,
                                     Distribution::gaussian_clusters, Distribution::annulus,
                                     Distribution::grid_jitter};
  return all[i % 4];
}

// Random facilities inside the users' bounding box, on a half-integer grid so
// they never coincide with a (jittered integer) user.
inline FacilitySet random_facilities(const UserSet& users, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coord(0, 999);
  std::vector<Point> f;
  while (static_cast<int>(f.size()) < k) {
    Point p = users.dimension() == 2 ? Point(coord(rng) + 0.5, coord(rng) + 0.5)
                                     : Point(coord(rng) + 0.5, coord(rng) + 0.5, coord(rng) + 0.5);
    bool dup = false;
    for (const Point& q : f) dup = dup || q == p;
    if (!dup) f.push_back(p);
  }
  return FacilitySet(std::move(f), Player::p1);
}

}  // namespace vg::test
