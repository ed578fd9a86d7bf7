#include "vg/serialization.hpp"

namespace vg {

namespace {

json integer_json(const mpz_class& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return mpz_class(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw ParseError("expected an integer, got " + j.dump());
}

}  // namespace

json to_json(const Rational& r) { return {{"num", integer_json(r.num())}, {"den", integer_json(r.den())}}; }

Rational rational_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw ParseError("rational must be {num, den}");
  const mpz_class den = integer_from_json(j.at("den"));
  if (den == 0) throw ParseError("rational with zero denominator");
  return Rational(integer_from_json(j.at("num")), den);
}

json to_json(const Point& p) {
  json a = json::array({p[0], p[1]});
  if (p.dim == 3) a.push_back(p[2]);
  return a;
}

Point point_from_json(const json& j) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3))
    throw ParseError("point must be [x, y] or [x, y, z], got " + j.dump());
  for (const auto& v : j)
    if (!v.is_number()) throw ParseError("point coordinates must be numbers, got " + j.dump());
  Point p = j.size() == 2 ? Point(j[0].get<double>(), j[1].get<double>())
                          : Point(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
  if (!is_finite(p)) throw ParseError("point coordinates must be finite");
  return p;
}

json to_json(std::span<const Point> pts) {
  json a = json::array();
  for (const Point& p : pts) a.push_back(to_json(p));
  return a;
}

std::vector<Point> points_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a list of points");
  std::vector<Point> out;
  for (const auto& e : j) out.push_back(point_from_json(e));
  return out;
}

json to_json(const Disk& d) { return {{"center", to_json(d.center)}, {"radius", d.radius}}; }

json to_json(const Strategy& s) {
  json j{{"kind", to_string(s.kind)},
         {"k", s.k()},
         {"guarantee", to_json(s.guarantee)},
         {"points", to_json(s.placements.points())}};
  if (s.epsilon) j["epsilon"] = *s.epsilon;
  return j;
}

json to_json(const BestResponse& r) {
  return {{"point", to_json(r.location)},
          {"payoff", r.payoff},
          {"served", r.served},
          {"method", to_string(r.method)}};
}

json to_json(const EpsilonTable& t) {
  json rows = json::array();
  for (const auto& row : table_rows(t))
    rows.push_back({{"k", row.k},
                    {"epsilon", to_json(row.epsilon)},
                    {"r", row.r},
                    {"s", row.s},
                    {"factor", to_json(row.factor)}});
  return {{"dimension", t.dimension}, {"rule", to_string(t.rule)}, {"entries", rows}};
}

json bound_bars(int dimension, long n, int k) {
  const auto table = build_table(dimension, k);
  return {{"lower", to_json((Rational(1) - table.epsilon(k)) * Rational(n))},
          {"half", to_json(Rational(n, 2))},
          {"upper", to_json(Rational(2L * k - 1, 2L * k) * Rational(n))}};
}

json to_json(const GameResult& r) {
  const long n = static_cast<long>(r.users.size());
  json j{{"instance", r.instance_id},
         {"dimension", r.users.dimension()},
         {"n", n},
         {"k", r.k},
         {"users", to_json(r.users.points())},
         {"strategy", to_json(r.strategy)},
         {"best_response", to_json(r.response)},
         {"halfcell", to_json(r.halfcell)},
         {"p1_payoff", r.p1_payoff},
         {"p2_payoff", r.p2_payoff}};
  j["bars"] = bound_bars(r.users.dimension(), n, r.k);
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  j["bounds"] = {{"lower", to_json(r.bounds.lower_fraction * Rational(n))},
                 {"upper", to_json(r.bounds.upper_fraction * Rational(n))},
                 {"half", to_json(Rational(n, 2))},
                 {"p2_cap", r.bounds.p2_cap},
                 {"p2_floor", r.bounds.p2_floor},
                 {"satisfied",
                  {{"lower", r.bounds.lower_ok},
                   {"upper", r.bounds.upper_ok},
                   {"halfcell", r.bounds.halfcell_ok},
                   {"witness", r.bounds.witness_ok}}}};
  return j;
}

}  // namespace vg
