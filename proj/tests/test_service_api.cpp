#include <filesystem>

#include "doctest.h"
#include "helpers.hpp"
#include "vg/best_response.hpp"
#include "vg/service_api.hpp"

using namespace vg;
using vg::service::Service;

namespace {

std::string create(Service& svc, const json& body) {
  const auto r = svc.handle("POST", "/sessions", body.dump());
  REQUIRE(r.status == 201);
  return r.body["session_id"].get<std::string>();
}

}  // namespace

TEST_CASE("a full session: place, query, undo, commit") {
  Service svc;
  const std::string id = create(svc, {{"gen_spec", "uniform_square:30:seed=4"}, {"k", 2}});
  const std::string base = "/sessions/" + id;

  CHECK(svc.handle("GET", base + "/best-response", "").status == 409);
  CHECK(svc.handle("POST", base + "/place", json{{"point", {100.5, 200.5}}}.dump()).status == 200);
  CHECK(svc.handle("POST", base + "/place", json{{"point", {100.5, 200.5}}}.dump()).status == 409);
  CHECK(svc.handle("POST", base + "/place", json{{"point", {700.5, 600.5}}}.dump()).status == 200);
  CHECK(svc.handle("POST", base + "/place", json{{"point", {5.5, 5.5}}}.dump()).status == 409);

  const auto users = generate_users(InstanceSpec::parse("uniform_square:30:seed=4"));
  const FacilitySet f1({Point(100.5, 200.5), Point(700.5, 600.5)}, Player::p1);
  const auto br = svc.handle("GET", base + "/best-response", "");
  REQUIRE(br.status == 200);
  CHECK(br.body["payoff"].get<int>() == best_response(users, f1).payoff);
  CHECK(br.body["lower_bound"].get<int>() == 8);

  CHECK(svc.handle("DELETE", base + "/place/last", "").status == 200);
  CHECK(svc.handle("GET", base, "").body["placements"].size() == 1);
  CHECK(svc.handle("POST", base + "/place", json{{"point", {700.5, 600.5}}}.dump()).status == 200);

  const auto vor = svc.handle("GET", base + "/voronoi", "");
  REQUIRE(vor.status == 200);
  CHECK(vor.body["cells"].size() == 2);
  std::size_t served = 0;
  for (const auto& c : vor.body["cells"]) served += c["users"].size();
  CHECK(served == 30);

  const auto done = svc.handle("POST", base + "/commit", "");
  REQUIRE(done.status == 200);
  CHECK(done.body["p1_payoff"].get<int>() + done.body["p2_payoff"].get<int>() == 30);
  CHECK(svc.handle("POST", base + "/place", json{{"point", {1.5, 1.5}}}.dump()).status == 409);
  CHECK(svc.handle("GET", base, "").body["committed"].get<bool>());
}

TEST_CASE("bad requests map to 404 and 422") {
  Service svc;
  CHECK(svc.handle("GET", "/sessions/deadbeef", "").status == 404);
  CHECK(svc.handle("GET", "/nowhere", "").status == 404);
  CHECK(svc.handle("POST", "/sessions", "{not json").status == 422);
  CHECK(svc.handle("POST", "/sessions", json{{"k", 0}, {"gen_spec", "annulus:10"}}.dump())
            .status == 422);
  CHECK(svc.handle("POST", "/sessions", json{{"k", 1}, {"users", {{0, 0}, {0, 0}}}}.dump())
            .status == 422);
  const std::string id = create(svc, {{"users", {{0, 0}, {5, 1}, {2, 7}}}, {"k", 1}});
  CHECK(svc.handle("POST", "/sessions/" + id + "/place", json{{"point", "x"}}.dump()).status ==
        422);
  CHECK(svc.handle("GET", "/epsilon-table", "", {{"dim", "five"}}).status == 422);
}

TEST_CASE("strategy and table endpoints") {
  Service svc;
  const std::string id = create(svc, {{"gen_spec", "annulus:40:seed=2"}, {"k", 3}});
  const auto s = svc.handle("GET", "/strategies/mustafa_ray", "", {{"session", id}});
  REQUIRE(s.status == 200);
  CHECK(s.body["points"].size() == 3);
  CHECK(svc.handle("GET", "/strategies/centerpoint", "", {{"session", id}, {"k", "1"}}).status ==
        200);
  CHECK(svc.handle("GET", "/strategies/bogus", "", {{"session", id}}).status == 404);

  const auto t = svc.handle("GET", "/epsilon-table", "", {{"dim", "2"}, {"kmax", "5"}});
  REQUIRE(t.status == 200);
  const auto& e = t.body["entries"];
  REQUIRE(e.size() == 5);
  CHECK(e[1]["epsilon"]["num"].get<long>() == 4);
  CHECK(e[1]["epsilon"]["den"].get<long>() == 7);
}

TEST_CASE("idle sessions expire and persisted sessions hit disk") {
  const auto dir = std::filesystem::temp_directory_path() / "vg_service_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  service::Options o;
  o.ttl = std::chrono::seconds(10);
  o.persist_dir = dir.string();
  Service svc(o);
  const std::string id = create(svc, {{"gen_spec", "grid_jitter:12"}, {"k", 1}});
  svc.handle("POST", "/sessions/" + id + "/place", json{{"point", {3.5, 3.5}}}.dump());
  CHECK(std::filesystem::exists(dir / (id + ".json")));
  CHECK(svc.session_count() == 1);
  CHECK(svc.evict_expired(Service::Clock::now() + std::chrono::seconds(60)) == 1);
  CHECK(svc.session_count() == 0);
  std::filesystem::remove_all(dir);
}
