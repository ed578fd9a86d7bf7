#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vg/cone_cover.hpp"
#include "vg/epsilon_table.hpp"
#include "vg/geometry.hpp"
#include "vg/kernels.hpp"
#include "vg/rational.hpp"

namespace vg {

enum class StrategyKind { centerpoint, mustafa_ray, disk_net, ball_net, custom };

std::string to_string(StrategyKind kind);
StrategyKind parse_strategy_kind(const std::string& text);

struct Strategy {
  FacilitySet placements;
  StrategyKind kind = StrategyKind::custom;
  Rational guarantee{1};  // claimed cap on P2's payoff, as a fraction of n
  std::optional<double> epsilon;
  std::vector<Disk> clusters;  // D* / B* disks of a net, in removal order

  int k() const { return static_cast<int>(placements.size()); }
};

// Point of Tukey depth at least ceil(n/(d+1)), verified before returning.
Point centerpoint(std::span<const Point> pts, kernels::Exec exec = kernels::Exec::parallel);
Point centerpoint(const UserSet& users);

// Region of points with Tukey depth >= tau; empty when none exists.
// Exposed for tests; `slack` widens every constraint.
bool depth_region_point(std::span<const Point> pts, int tau, kernels::Exec exec, Point& out,
                        double slack = 0.0);

// k-point planar net whose best response is at most eps_k * n.
Strategy build_E_k(const UserSet& users, int k, const EpsilonTable& table);

Disk min_k_enclosing_disk(std::span<const Point> pts, int k,
                          kernels::Exec exec = kernels::Exec::parallel);
inline Disk min_k_enclosing_ball(std::span<const Point> pts, int k,
                                 kernels::Exec exec = kernels::Exec::parallel) {
  return min_k_enclosing_disk(pts, k, exec);
}

// Centre plus one point per pi/3 sector, at distance sqrt(3) r, with the
// sectors starting at angle `anchor`.
std::vector<Point> pierce_disk_cluster(const Disk& dstar, double anchor = 0.0);
// Centre plus one point per cone axis, at distance sqrt(3) r.
std::vector<Point> pierce_ball_cluster(const Disk& bstar, const ConeSet& cones);

// Adds points just off users, farthest-first, until there are k placements.
std::vector<Point> pad_placements(std::vector<Point> pts, std::span<const Point> users,
                                  std::size_t k);

Strategy build_disk_net(const UserSet& users, double epsilon);
Strategy build_ball_net(const UserSet& users, double epsilon, bool allow_fallback_cones = false);

}  // namespace vg
