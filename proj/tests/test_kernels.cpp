#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "vg/best_response.hpp"
#include "vg/kernels.hpp"
#include "vg/p1_strategies.hpp"

using namespace vg;

TEST_CASE("arc sweep: serial reference equals the OpenMP driver") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto users = test::make_users(60 + 10 * t, 10 + t, 2, test::nth_distribution(t));
    const auto disks = nearest_facility_disks(users, test::random_facilities(users, 4, rng));
    const auto a = kernels::sweep_all(disks, kernels::Exec::serial);
    const auto b = kernels::sweep_all(disks, kernels::Exec::parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].depth == b[i].depth);
      CHECK(a[i].angle == b[i].angle);
    }
  }
}

TEST_CASE("hyperplane splits: serial equals parallel, counts add up") {
  for (int dim : {2, 3}) {
    const auto users = test::make_users(dim == 2 ? 50 : 20, 3, dim);
    const auto a = kernels::hyperplane_splits(users.points(), kernels::Exec::serial);
    const auto b = kernels::hyperplane_splits(users.points(), kernels::Exec::parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].positive == b[i].positive);
      CHECK(a[i].negative == b[i].negative);
      CHECK(a[i].normal == b[i].normal);
      // Points in general position: only the defining points lie on it.
      CHECK(a[i].positive + a[i].negative + dim == static_cast<int>(users.size()));
    }
  }
}

TEST_CASE("min k-enclosing: serial equals parallel and beats brute force") {
  for (int t = 0; t < 8; ++t) {
    const auto users = test::make_users(14, 20 + t);
    const auto& pts = users.points();
    const int k = 3 + t % 8;
    const Disk a = kernels::min_k_enclosing(pts, k, kernels::Exec::serial);
    const Disk b = kernels::min_k_enclosing(pts, k, kernels::Exec::parallel);
    CHECK(a.center == b.center);
    CHECK(a.radius == b.radius);
    CHECK(kernels::count_enclosed(a, pts) >= k);
    // Oracle: smallest disk spanned by 2 or 3 points that holds k of them.
    double best = 1e300;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t l = j; l < n; ++l) {
          std::vector<Point> s{pts[i], pts[j]};
          if (l != j) s.push_back(pts[l]);
          const Disk d = min_enclosing_disk_of_subset(s);
          if (kernels::count_enclosed(d, pts) >= k) best = std::min(best, d.radius);
        }
    CHECK(a.radius == doctest::Approx(best).epsilon(1e-12));
  }
}
