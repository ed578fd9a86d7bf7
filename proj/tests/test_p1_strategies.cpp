#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "vg/best_response.hpp"
#include "vg/cone_cover.hpp"
#include "vg/oracle.hpp"
#include "vg/p1_strategies.hpp"

using namespace vg;

TEST_CASE("centerpoint depth meets n/(d+1)") {
  for (int t = 0; t < 40; ++t) {
    const int dim = t % 4 == 3 ? 3 : 2;
    const int n = 4 + t % 30;
    const auto users = test::make_users(n, 1000 + t, dim, test::nth_distribution(t));
    const Point c = centerpoint(users);
    const int need = (n + dim) / (dim + 1);
    CHECK(oracle::tukey_depth_by_directions(c, users.points(), dim == 2 ? 720 : 20000) >= need);
  }
}

TEST_CASE("centerpoint handles four points in convex position") {
  const std::vector<Point> sq{{0, 0}, {1, 0.01}, {1.02, 1}, {0.03, 0.98}};
  const Point c = centerpoint(sq);
  CHECK(tukey_depth(c, sq) >= 2);
}

TEST_CASE("E_k has k points and holds P2 to eps_k n") {
  const auto table = build_table(2, 8);
  for (int t = 0; t < 24; ++t) {
    const int k = 1 + t % 8;
    const int n = 30 + 5 * (t % 7);
    const auto users = test::make_users(n, 4000 + t, 2, test::nth_distribution(t));
    const auto st = build_E_k(users, k, table);
    CHECK(st.k() == k);
    const auto br = best_response(users, st.placements);
    CHECK_MESSAGE(br.payoff <= table.epsilon(k).floor_mul(n), "k=", k, " n=", n);
  }
}

TEST_CASE("disk cluster piercing points sit at sqrt(3) r") {
  const Disk d{Point(3, -2), 2.5};
  const auto pts = pierce_disk_cluster(d, 0.3);
  REQUIRE(pts.size() == 7);
  CHECK(pts[0] == d.center);
  for (std::size_t i = 1; i < pts.size(); ++i)
    CHECK(std::abs(distance(pts[i], d.center) - std::sqrt(3.0) * d.radius) <=
          1e-12 * d.radius);
}

TEST_CASE("disk net: size bound and exhaustive piercing") {
  for (double eps : {0.5, 0.25, 0.1}) {
    const auto users = test::make_users(40, 17);
    const auto st = build_disk_net(users, eps);
    CHECK(st.k() <= 7 * static_cast<int>(std::floor(1.0 / eps)));
    const auto rep = oracle::check_piercing(users.points(), eps, st.placements.points());
    CHECK(rep.misses == 0);
    const auto br = best_response(users, st.placements);
    CHECK(br.payoff <= static_cast<int>(std::floor(6 * eps * 40 + 1e-9)));
  }
}

TEST_CASE("ball net: size bound and exhaustive piercing") {
  const auto users = test::make_users(20, 23, 3);
  for (double eps : {0.5, 0.25}) {
    const auto st = build_ball_net(users, eps);
    CHECK(st.k() <= 21 * static_cast<int>(std::floor(1.0 / eps)));
    CHECK(oracle::check_piercing(users.points(), eps, st.placements.points()).misses == 0);
  }
}

TEST_CASE("nets reject epsilons that make clusters trivial") {
  const auto users = test::make_users(10, 1);
  CHECK_THROWS_AS(build_disk_net(users, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(build_disk_net(users, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_disk_net(users, 1.5), std::invalid_argument);
}

TEST_CASE("padding never lands on a user or repeats a point") {
  const auto users = test::make_users(12, 2);
  const auto out = pad_placements({users[0] + Point(0.5, 0.5)}, users.points(), 9);
  REQUIRE(out.size() == 9);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const Point& u : users.points()) CHECK_FALSE(out[i] == u);
    for (std::size_t j = i + 1; j < out.size(); ++j) CHECK_FALSE(out[i] == out[j]);
  }
}

TEST_CASE("cone directions cover the sphere within pi/6") {
  const auto& cones = cone_cover_directions(false);
  CHECK(cones.directions.size() == 20);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0, 1);
  double worst = 0;
  for (int t = 0; t < 20000; ++t) {
    const Point v = normalized(Point(g(rng), g(rng), g(rng)));
    double best = 10;
    for (const Point& a : cones.directions)
      best = std::min(best, std::acos(std::clamp(dot(a, v), -1.0, 1.0)));
    worst = std::max(worst, best);
  }
  CHECK(worst <= std::acos(-1.0) / 6);
}
