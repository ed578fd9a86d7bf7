#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vg/rational.hpp"

namespace vg {

// Which (r, s) splits the recursion may use for index i.
//   dimensional: r + d*s + 1 == i, the general-d recurrence.
//   planar:      r + 2*s + 1 == i for every d. This is the variant that
//                reproduces the published three-dimensional numbers.
enum class IndexRule { dimensional, planar };

struct EpsilonEntry {
  Rational value;
  int r = -1;  // -1 for i == 0
  int s = -1;
};

struct EpsilonTable {
  int dimension = 2;
  IndexRule rule = IndexRule::dimensional;
  std::vector<EpsilonEntry> entries;  // indexed 0..kmax

  int kmax() const { return static_cast<int>(entries.size()) - 1; }
  const Rational& epsilon(int i) const;
};

EpsilonTable build_table(int d, int kmax, IndexRule rule = IndexRule::dimensional);

Rational approx_factor(int d, int k, const EpsilonTable& table);
Rational net_factor(int k, int kappa);
int crossover_k(int d, int kappa, const EpsilonTable& table);
int winning_threshold(int d, const EpsilonTable& table);

// Net constant for dimension d: 42 in the plane, 420 in space.
int net_kappa(int d);

struct TableRow {
  int k = 0;
  Rational epsilon;
  int r = -1;
  int s = -1;
  Rational factor;
};

std::vector<TableRow> table_rows(const EpsilonTable& table);
void write_table_csv(std::ostream& out, const EpsilonTable& table);
std::vector<TableRow> read_table_csv(std::istream& in);
void write_table_pretty(std::ostream& out, const EpsilonTable& table);

std::string to_string(IndexRule rule);
IndexRule parse_index_rule(const std::string& text);

}  // namespace vg
