#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "vg/game_engine.hpp"

using namespace vg;

TEST_CASE("instance specs parse and print back") {
  const auto s = InstanceSpec::parse("annulus:40:seed=9:dim=3");
  CHECK(s.distribution == Distribution::annulus);
  CHECK(s.n == 40);
  CHECK(s.seed == 9);
  CHECK(s.dimension == 3);
  CHECK(InstanceSpec::parse(s.id()).id() == s.id());
  CHECK_THROWS(InstanceSpec::parse("nowhere:10"));
  CHECK_THROWS(InstanceSpec::parse("uniform_square:abc"));
}

TEST_CASE("generation is deterministic and in general position") {
  for (int i = 0; i < 4; ++i) {
    InstanceSpec s;
    s.n = 50;
    s.seed = 42;
    s.distribution = test::nth_distribution(i);
    const auto a = generate_users(s);
    const auto b = generate_users(s);
    CHECK(a.points() == b.points());
    CHECK(a.general_position());
    s.seed = 43;
    CHECK_FALSE(generate_users(s).points() == a.points());
  }
}

TEST_CASE("played games satisfy their own bounds") {
  const auto table = build_table(2, 8);
  for (int t = 0; t < 12; ++t) {
    const auto users = test::make_users(40, 600 + t, 2, test::nth_distribution(t));
    const int k = 1 + t % 4;
    const auto kind = k == 1 && t % 2 == 0 ? StrategyKind::centerpoint : StrategyKind::mustafa_ray;
    const auto r = play(users, k, kind);
    CHECK(r.p1_payoff + r.p2_payoff == 40);
    CHECK(r.strategy.k() == k);
    CHECK(verify_bounds(r, table).ok());
    CHECK(r.halfcell.payoff <= r.response.payoff);
  }
}

TEST_CASE("strategy arguments are validated") {
  const auto users = test::make_users(20, 1);
  CHECK_THROWS_AS(build_strategy(users, 2, StrategyKind::centerpoint), std::invalid_argument);
  // A net for eps = 0.1 needs more than three facilities.
  CHECK_THROWS_AS(build_strategy(users, 3, StrategyKind::disk_net, {0.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_strategy(test::make_users(20, 1, 3), 2, StrategyKind::mustafa_ray),
                  std::invalid_argument);
  const auto net = build_strategy(users, 30, StrategyKind::disk_net, {0.5});
  CHECK(net.k() == 30);
}

TEST_CASE("batch equals one-by-one play and writes a summary") {
  std::vector<Episode> eps;
  for (int i = 0; i < 6; ++i) {
    Episode e;
    e.spec = InstanceSpec::parse("gaussian_clusters:30:seed=" + std::to_string(i + 1));
    e.k = 1 + i % 3;
    e.kind = StrategyKind::mustafa_ray;
    eps.push_back(e);
  }
  const auto results = run_batch(eps);
  REQUIRE(results.size() == eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto solo = play(generate_users(eps[i].spec), eps[i].k, eps[i].kind);
    CHECK(solo.p1_payoff == results[i].p1_payoff);
    CHECK(solo.response.location == results[i].response.location);
  }
  std::stringstream ss;
  write_summary_csv(ss, results);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "k,strategy,n,p1_payoff,lower,upper");
  int lines = 0;
  for (std::string l; std::getline(ss, l);) lines += l.empty() ? 0 : 1;
  CHECK(lines == 6);
}

TEST_CASE("custom placements are scored as given") {
  const UserSet users({Point(0, 0), Point(10, 0), Point(0, 10), Point(10, 10)}, false);
  const auto r = play_placements(users, FacilitySet({Point(5, 5)}, Player::p1));
  CHECK(r.strategy.kind == StrategyKind::custom);
  // Any single rival facility wins at most two of the four corners.
  CHECK(r.p2_payoff == 2);
}
