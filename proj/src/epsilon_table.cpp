#include "vg/epsilon_table.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vg/geometry.hpp"

namespace vg {

const Rational& EpsilonTable::epsilon(int i) const {
  if (i < 0 || i > kmax())
    throw std::out_of_range("index " + std::to_string(i) + " outside table 0.." +
                            std::to_string(kmax()));
  return entries[static_cast<std::size_t>(i)].value;
}

EpsilonTable build_table(int d, int kmax, IndexRule rule) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  if (kmax < 0) throw std::invalid_argument("kmax must be nonnegative");
  EpsilonTable t;
  t.dimension = d;
  t.rule = rule;
  t.entries.resize(static_cast<std::size_t>(kmax) + 1);
  t.entries[0].value = Rational(1);

  const int stride = rule == IndexRule::dimensional ? d : 2;
  const Rational spread(d - 1);
  // x = e_r (1 + (d-1) e_s); the entry is x / (1 + x), which is monotone in x,
  // so minimising x is enough. Walking s downward visits r in increasing
  // order, and a strict comparison keeps the smallest r on ties.
  for (int i = 1; i <= kmax; ++i) {
    Rational best_x;
    int best_r = -1, best_s = -1;
    for (int s = (i - 1) / stride; s >= 0; --s) {
      const int r = i - 1 - stride * s;
      Rational x = t.entries[static_cast<std::size_t>(r)].value *
                   (Rational(1) + spread * t.entries[static_cast<std::size_t>(s)].value);
      if (best_r < 0 || x < best_x) {
        best_x = std::move(x);
        best_r = r;
        best_s = s;
      }
    }
    auto& e = t.entries[static_cast<std::size_t>(i)];
    e.value = best_x / (Rational(1) + best_x);
    e.r = best_r;
    e.s = best_s;
  }
  return t;
}

Rational approx_factor(int d, int k, const EpsilonTable& table) {
  if (table.dimension != d)
    throw std::invalid_argument("table built for dimension " + std::to_string(table.dimension));
  if (k < 1 || k > table.kmax())
    throw std::out_of_range("k=" + std::to_string(k) + " outside table range 1.." +
                            std::to_string(table.kmax()));
  return Rational(2L * k - 1) / (Rational(2L * k) * (Rational(1) - table.epsilon(k)));
}

Rational net_factor(int k, int kappa) {
  if (k <= kappa)
    throw std::invalid_argument("net bound is vacuous for k=" + std::to_string(k) +
                                " <= kappa=" + std::to_string(kappa));
  return Rational(2L * k - 1, 2L * (k - kappa));
}

int crossover_k(int d, int kappa, const EpsilonTable& table) {
  if (kappa < 0) throw std::invalid_argument("kappa must be nonnegative");
  for (int k = std::max(1, kappa + 1); k <= table.kmax(); ++k) {
    if (!(approx_factor(d, k, table) < net_factor(k, kappa))) return k - 1;
  }
  throw std::out_of_range("table with kmax=" + std::to_string(table.kmax()) +
                          " is too short to witness the crossover");
}

int net_kappa(int d) {
  if (d == 2) return 42;
  if (d == 3) return 420;
  throw std::invalid_argument("no net constant for dimension " + std::to_string(d));
}

int winning_threshold(int d, const EpsilonTable& table) {
  if (table.dimension != d)
    throw std::invalid_argument("table built for dimension " + std::to_string(table.dimension));
  const Rational half(1, 2);
  if (d == 2) {
    for (int k = 1; k <= table.kmax(); ++k)
      if (table.epsilon(k) < half) return k;
    throw std::out_of_range("no k <= " + std::to_string(table.kmax()) +
                            " with epsilon below 1/2");
  }
  if (d == 3) {
    // In space the guarantee comes from the ball net: (k - 420)/k > 1/2.
    const int kappa = net_kappa(3);
    for (int k = kappa + 1; k <= table.kmax(); ++k)
      if (Rational(k - kappa, k) > half) return k;
    throw std::out_of_range("table with kmax=" + std::to_string(table.kmax()) +
                            " does not reach the winning threshold");
  }
  throw std::invalid_argument("winning threshold defined for d in {2,3}");
}

std::vector<TableRow> table_rows(const EpsilonTable& table) {
  std::vector<TableRow> rows;
  for (int k = 1; k <= table.kmax(); ++k) {
    const auto& e = table.entries[static_cast<std::size_t>(k)];
    rows.push_back({k, e.value, e.r, e.s, approx_factor(table.dimension, k, table)});
  }
  return rows;
}

void write_table_csv(std::ostream& out, const EpsilonTable& table) {
  out << "k,epsilon_num,epsilon_den,r,s,factor_num,factor_den\n";
  for (const auto& row : table_rows(table)) {
    out << row.k << ',' << row.epsilon.num().get_str() << ',' << row.epsilon.den().get_str()
        << ',' << row.r << ',' << row.s << ',' << row.factor.num().get_str() << ','
        << row.factor.den().get_str() << '\n';
  }
}

std::vector<TableRow> read_table_csv(std::istream& in) {
  std::vector<TableRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("k,", 0) == 0) continue;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    if (f.size() != 7)
      throw ParseError("line " + std::to_string(lineno) + ": expected 7 fields, got " +
                       std::to_string(f.size()));
    try {
      TableRow r;
      r.k = std::stoi(f[0]);
      r.epsilon = Rational::parse(f[1] + "/" + f[2]);
      r.r = std::stoi(f[3]);
      r.s = std::stoi(f[4]);
      r.factor = Rational::parse(f[5] + "/" + f[6]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

void write_table_pretty(std::ostream& out, const EpsilonTable& table) {
  const auto rows = table_rows(table);
  std::size_t w_eps = 7, w_fac = 6;
  for (const auto& r : rows) {
    w_eps = std::max(w_eps, r.epsilon.str().size());
    w_fac = std::max(w_fac, r.factor.str().size());
  }
  out << "d = " << table.dimension << ", index rule = " << to_string(table.rule) << '\n';
  out << std::setw(5) << "k" << "  " << std::setw(static_cast<int>(w_eps)) << "epsilon"
      << "  " << std::setw(4) << "r" << std::setw(4) << "s" << "  "
      << std::setw(static_cast<int>(w_fac)) << "factor" << "  approx\n";
  for (const auto& r : rows) {
    out << std::setw(5) << r.k << "  " << std::setw(static_cast<int>(w_eps)) << r.epsilon.str()
        << "  " << std::setw(4) << r.r << std::setw(4) << r.s << "  "
        << std::setw(static_cast<int>(w_fac)) << r.factor.str() << "  " << std::fixed
        << std::setprecision(4) << r.factor.to_double() << '\n';
    out.unsetf(std::ios::fixed);
  }
}

std::string to_string(IndexRule rule) {
  return rule == IndexRule::dimensional ? "dimensional" : "planar";
}

IndexRule parse_index_rule(const std::string& text) {
  if (text == "dimensional") return IndexRule::dimensional;
  if (text == "planar") return IndexRule::planar;
  throw std::invalid_argument("unknown index rule '" + text + "'");
}

}  // namespace vg
