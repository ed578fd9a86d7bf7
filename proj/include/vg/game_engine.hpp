#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vg/best_response.hpp"
#include "vg/epsilon_table.hpp"
#include "vg/geometry.hpp"
#include "vg/p1_strategies.hpp"
#include "vg/rational.hpp"

namespace vg {

enum class Distribution { uniform_square, gaussian_clusters, annulus, grid_jitter };

std::string to_string(Distribution d);
Distribution parse_distribution(const std::string& text);

struct InstanceSpec {
  int dimension = 2;
  int n = 0;
  Distribution distribution = Distribution::uniform_square;
  std::uint64_t seed = 1;

  // "dist:n[:seed=S][:dim=D]"
  static InstanceSpec parse(const std::string& text);
  std::string id() const;
};

// Deterministic given the InstanceSpec: points on the integer grid [0,1000)^d with a
// sub-micro jitter, drawn from std::mt19937_64 through hand-written
// transforms so the stream is identical on every platform.
UserSet generate_users(const InstanceSpec& spec);

struct PlayParams {
  std::optional<double> epsilon;
  bool allow_fallback_cones = false;
};

struct Bounds {
  Rational lower_fraction;  // P1 payoff >= lower_fraction * n
  Rational upper_fraction;  // P1 payoff <= upper_fraction * n
  long p2_cap = 0;          // floor(guarantee * n)
  long p2_floor = 0;        // ceil(n / 2k)
  bool lower_ok = false;
  bool upper_ok = false;
  bool halfcell_ok = false;
  bool witness_ok = false;
};

struct GameResult {
  std::string instance_id;
  UserSet users;
  int k = 0;
  Strategy strategy;
  BestResponse response;
  BestResponse halfcell;
  std::optional<Disk> witness;
  int p1_payoff = 0;
  int p2_payoff = 0;
  Bounds bounds;
};

// Builds the placements play() would use, padded to exactly k points.
Strategy build_strategy(const UserSet& users, int k, StrategyKind kind,
                        const PlayParams& params = {});

GameResult play(const UserSet& users, int k, StrategyKind kind, const PlayParams& params = {},
                const std::string& instance_id = "custom");

// Plays a caller-supplied placement (no strategy construction).
GameResult play_placements(const UserSet& users, const FacilitySet& f1,
                           const std::string& instance_id = "custom");

struct BoundReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Re-derives every inequality from the raw result; trusts no stored flag.
BoundReport verify_bounds(const GameResult& result, const EpsilonTable& table);

struct Episode {
  InstanceSpec spec;
  int k = 1;
  StrategyKind kind = StrategyKind::centerpoint;
  PlayParams params;
};

std::vector<GameResult> run_batch(const std::vector<Episode>& episodes);

void write_summary_csv(std::ostream& out, const std::vector<GameResult>& results);

}  // namespace vg
