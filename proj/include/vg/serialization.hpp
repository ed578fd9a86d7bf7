#pragma once

#include <json.hpp>

#include "vg/best_response.hpp"
#include "vg/epsilon_table.hpp"
#include "vg/game_engine.hpp"
#include "vg/geometry.hpp"
#include "vg/p1_strategies.hpp"
#include "vg/rational.hpp"

namespace vg {

using json = nlohmann::json;

// Rationals are {num, den}; parts that overflow int64 become decimal strings.
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const Point& p);
// Accepts [x, y] or [x, y, z]; throws ParseError otherwise.
Point point_from_json(const json& j);
json to_json(std::span<const Point> pts);
std::vector<Point> points_from_json(const json& j);

json to_json(const Disk& d);
json to_json(const Strategy& s);
json to_json(const BestResponse& r);
json to_json(const EpsilonTable& t);
// Reference payoff marks for P1 with budget k: (1 - eps_k) n, n / 2 and
// (2k - 1) n / 2k, as exact rationals.
json bound_bars(int dimension, long n, int k);

// One line of the batch JSON-lines output.
json to_json(const GameResult& r);

}  // namespace vg
