#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "vg/best_response.hpp"
#include "vg/oracle.hpp"

using namespace vg;

TEST_CASE("planar sweep matches the brute-force candidate oracle") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + t % 23;
    const int k = 1 + t % 4;
    const auto users = test::make_users(n, 500 + t, 2, test::nth_distribution(t));
    const auto f1 = test::random_facilities(users, k, rng);
    const auto fast = best_response(users, f1);
    const auto brute = oracle::brute_force_best_response(users, f1, 120);
    CHECK_MESSAGE(fast.payoff == brute.payoff, "n=", n, " k=", k, " trial=", t);
  }
}

TEST_CASE("reported location really earns the reported payoff") {
  std::mt19937_64 rng(9);
  for (int dim : {2, 3}) {
    for (int t = 0; t < 20; ++t) {
      const auto users = test::make_users(12 + t, 40 + t, dim);
      const auto f1 = test::random_facilities(users, 1 + t % 3, rng);
      const auto br = best_response(users, f1);
      CHECK_FALSE(f1.contains(br.location));
      const auto rec = payoff(users, f1, FacilitySet({br.location}, Player::p2));
      CHECK(rec.p2_count == br.payoff);
      CHECK(rec.served_by_p2 == br.served);
    }
  }
}

TEST_CASE("spatial enumeration is never beaten by random probes") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0, 1000);
  for (int t = 0; t < 10; ++t) {
    const auto users = test::make_users(10 + t, 900 + t, 3);
    const auto f1 = test::random_facilities(users, 2, rng);
    const auto br = best_response(users, f1);
    for (int q = 0; q < 3000; ++q) {
      const Point p(u(rng), u(rng), u(rng));
      CHECK(payoff(users, f1, FacilitySet({p}, Player::p2)).p2_count <= br.payoff);
    }
  }
}

TEST_CASE("serial and parallel best responses agree") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto users = test::make_users(40, 70 + t);
    const auto f1 = test::random_facilities(users, 3, rng);
    const auto a = best_response(users, f1, kernels::Exec::serial);
    const auto b = best_response(users, f1, kernels::Exec::parallel);
    CHECK(a.payoff == b.payoff);
    CHECK(a.location == b.location);
  }
}

TEST_CASE("half-cell response reaches n/(2k)") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    const int dim = t % 5 == 4 ? 3 : 2;
    const int n = 5 + t % 40;
    const int k = 1 + t % 6;
    const auto users = test::make_users(n, 300 + t, dim, test::nth_distribution(t));
    const auto f1 = test::random_facilities(users, k, rng);
    const auto h = halfcell_response(users, f1);
    CHECK(h.payoff >= (n + 2 * k - 1) / (2 * k));
    CHECK(payoff(users, f1, FacilitySet({h.location}, Player::p2)).p2_count == h.payoff);
  }
}

TEST_CASE("sector witness holds a sixth of the payoff and no facility") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const int dim = t % 3 == 2 ? 3 : 2;
    const auto users = test::make_users(20 + t, 60 + t, dim);
    const auto f1 = test::random_facilities(users, 1 + t % 4, rng);
    const auto br = best_response(users, f1);
    if (br.payoff == 0) continue;
    const Disk w = sector_witness(users, f1, br);
    const int cones = dim == 2 ? 6 : 20;
    CHECK(count_users_in(w, users) >= (br.payoff + cones - 1) / cones);
    CHECK(count_facilities_in(w, f1) == 0);
  }
}

TEST_CASE("a lone user sits on the facility and P2 gets nothing") {
  const UserSet users({Point(1, 1)}, false);
  const FacilitySet f1({Point(1, 1)}, Player::p1);
  CHECK(best_response(users, f1).payoff == 0);
}
