#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "vg/geometry.hpp"
#include "vg/oracle.hpp"

using namespace vg;

TEST_CASE("orientation and incircle signs") {
  CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) > 0);
  CHECK(orient2d({0, 0}, {0, 1}, {1, 0}) < 0);
  CHECK(orient2d({0, 0}, {1, 1}, {2, 2}) == doctest::Approx(0.0));
  // (0.5, 0.5) lies inside the circle through the three unit-square corners.
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}) > 0);
  CHECK(incircle({0, 0}, {1, 0}, {0, 1}, {3, 3}) < 0);
  CHECK(orient3d({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}) != doctest::Approx(0.0));
}

TEST_CASE("user sets reject bad input") {
  CHECK_THROWS_AS(UserSet({Point(0, 0), Point(0, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(UserSet({Point(0, 0), Point(1, 1, 1)}), std::invalid_argument);
  CHECK_THROWS_AS(UserSet({Point(NAN, 0)}), std::invalid_argument);
  const UserSet line({Point(0, 0), Point(1, 1), Point(2, 2)}, true);
  CHECK_FALSE(line.general_position());
}

TEST_CASE("payoff sends ties to P1") {
  const UserSet users({Point(0, 0), Point(4, 0), Point(10, 0)}, false);
  const FacilitySet f1({Point(2, 1)}, Player::p1);
  // User (4,0) is equidistant from both facilities.
  const FacilitySet f2({Point(6, 1)}, Player::p2);
  const auto rec = payoff(users, f1, f2);
  CHECK(rec.p2_count == 1);
  CHECK(rec.p1_count == 2);
  REQUIRE(rec.served_by_p2.size() == 1);
  CHECK(rec.served_by_p2[0] == 2);
}

TEST_CASE("tukey depth agrees with the direction-sampling oracle") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const auto users = test::make_users(8 + t % 9, 100 + t);
    const auto& pts = users.points();
    std::uniform_real_distribution<double> u(0, 1000);
    for (int q = 0; q < 4; ++q) {
      const Point x(u(rng), u(rng));
      CHECK(tukey_depth(x, pts) == oracle::tukey_depth_by_directions(x, pts, 720));
    }
    // At a user the closed count includes the user itself.
    CHECK(tukey_depth(pts[0], pts) == oracle::tukey_depth_by_directions(pts[0], pts, 720));
  }
}

TEST_CASE("circumball passes through its support") {
  Disk d;
  const std::vector<Point> tri{{0, 0}, {4, 0}, {0, 3}};
  REQUIRE(circumball(tri, d));
  CHECK(d.radius == doctest::Approx(2.5));
  for (const Point& p : tri) CHECK(distance(p, d.center) == doctest::Approx(2.5));
  const std::vector<Point> tet{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  REQUIRE(circumball(tet, d));
  for (const Point& p : tet) CHECK(distance(p, d.center) == doctest::Approx(d.radius));
  const std::vector<Point> flat{{0, 0}, {1, 1}, {2, 2}};
  CHECK_FALSE(circumball(flat, d));
}

TEST_CASE("points survive a CSV round trip") {
  const auto users = test::make_users(25, 5);
  std::stringstream ss;
  write_points_csv(ss, users.points());
  const auto back = read_points_csv(ss);
  CHECK(back == users.points());
  std::stringstream bad("1,2\n3,x\n");
  CHECK_THROWS_AS(read_points_csv(bad), ParseError);
}
