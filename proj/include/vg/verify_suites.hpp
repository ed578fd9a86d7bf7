#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace vg::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 when untimed
};

struct Options {
  std::uint64_t seed = 20240601;
  int trials = 200;
};

CheckResult table_2d();
CheckResult table_3d();
CheckResult crossovers();
CheckResult oracle_equivalence(const Options& o);
CheckResult halfcell_lower_bound(const Options& o);
CheckResult centerpoint_game(const Options& o);
CheckResult ek_game(const Options& o);
CheckResult disk_net(const Options& o);
CheckResult sector_witness(const Options& o);
CheckResult piercing_geometry(const Options& o);
CheckResult cone_certificate();
CheckResult ball_net(const Options& o);

struct Check {
  std::string suite;  // bounds | piercing | oracle | tables
  std::function<CheckResult(const Options&)> run;
};

const std::vector<Check>& all_checks();

// Runs every check of `suite` ("all" for everything), timing each one.
std::vector<CheckResult> run_suite(const std::string& suite, const Options& o);

}  // namespace vg::verify
