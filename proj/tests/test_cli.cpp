#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "vg/cli.hpp"
#include "vg/epsilon_table.hpp"
#include "vg/serialization.hpp"

using namespace vg;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run vg_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vg_cli_test_" + name);
}

}  // namespace

TEST_CASE("table csv round-trips into the same exact values") {
  const auto r = vg_run({"table", "--dim", "2", "--kmax", "25", "--format", "csv"});
  REQUIRE(r.code == cli::kExitOk);
  std::istringstream in(r.out);
  const auto rows = read_table_csv(in);
  const auto want = table_rows(build_table(2, 25));
  REQUIRE(rows.size() == want.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].epsilon == want[i].epsilon);
    CHECK(rows[i].factor == want[i].factor);
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(vg_run({}).code == cli::kExitUsage);
  CHECK(vg_run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(vg_run({"table", "--dim", "4"}).code == cli::kExitUsage);
  CHECK(vg_run({"net", "--dim", "2", "--epsilon", "0"}).code == cli::kExitUsage);
  CHECK(vg_run({"play", "--gen", "uniform_square:20", "--k", "2", "--strategy", "centerpoint"})
            .code == cli::kExitUsage);
  CHECK(vg_run({"play", "--users", "/nonexistent/users.csv", "--k", "1"}).code ==
        cli::kExitUsage);
  CHECK(vg_run({"play", "--gen", "bogus:20", "--k", "1"}).code == cli::kExitUsage);
}

TEST_CASE("play reads a users file and emits JSON") {
  const auto users = test::make_users(30, 77);
  const auto path = temp_file("users.csv");
  {
    std::ofstream f(path);
    write_points_csv(f, users.points());
  }
  const auto r = vg_run({"play", "--users", path.string(), "--k", "2", "--strategy", "eknet",
                         "--json", "-"});
  std::filesystem::remove(path);
  REQUIRE(r.code == cli::kExitOk);
  const auto first = r.out.find('{');
  REQUIRE(first != std::string::npos);
  const auto j = json::parse(r.out.substr(first));
  CHECK(j["p1_payoff"].get<int>() + j["p2_payoff"].get<int>() == 30);
  CHECK(j["strategy"]["points"].size() == 2);
}

TEST_CASE("net prints one point per line") {
  const auto users = test::make_users(30, 3);
  const auto path = temp_file("net.csv");
  {
    std::ofstream f(path);
    write_points_csv(f, users.points());
  }
  const auto r = vg_run({"net", "--users", path.string(), "--dim", "2", "--epsilon", "0.25"});
  std::filesystem::remove(path);
  REQUIRE(r.code == cli::kExitOk);
  std::stringstream body;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') body << line << '\n';
  const auto pts = read_points_csv(body);
  CHECK(!pts.empty());
  CHECK(pts.size() <= 28);
}

TEST_CASE("verify tables suite passes") {
  const auto r = vg_run({"verify", "--suite", "tables"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("batch writes the summary CSV") {
  const auto r = vg_run({"batch", "--gen", "annulus:25:seed=1", "annulus:25:seed=2", "--k", "1",
                         "2", "--strategy", "eknet"});
  REQUIRE(r.code == cli::kExitOk);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "k,strategy,n,p1_payoff,lower,upper");
}
