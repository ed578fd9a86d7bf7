#include <numeric>
#include <sstream>

#include "doctest.h"
#include "vg/epsilon_table.hpp"
#include "vg/geometry.hpp"

using namespace vg;

namespace {

// Independent small-number fraction arithmetic for the recurrence.
struct Frac {
  __int128 n, d;
};

Frac reduce(__int128 n, __int128 d) {
  __int128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return {n / a, d / a};
}

bool less(const Frac& a, const Frac& b) { return a.n * b.d < b.n * a.d; }

// eps_i = min over r + stride*s + 1 = i of x/(1+x), x = eps_r (1 + (d-1) eps_s),
// evaluated with plain recursion over every split.
std::vector<Frac> reference_eps(int d, int stride, int kmax) {
  std::vector<Frac> e(static_cast<std::size_t>(kmax) + 1);
  e[0] = {1, 1};
  for (int i = 1; i <= kmax; ++i) {
    bool have = false;
    for (int s = 0; stride * s + 1 <= i; ++s) {
      const int r = i - 1 - stride * s;
      const Frac es = e[static_cast<std::size_t>(s)], er = e[static_cast<std::size_t>(r)];
      const Frac inner = reduce(es.d + (d - 1) * es.n, es.d);
      const Frac x = reduce(er.n * inner.n, er.d * inner.d);
      const Frac v = reduce(x.n, x.d + x.n);
      if (!have || less(v, e[static_cast<std::size_t>(i)])) e[static_cast<std::size_t>(i)] = v;
      have = true;
    }
  }
  return e;
}

Rational to_rational(const Frac& f) {
  return Rational(static_cast<long>(f.n), static_cast<long>(f.d));
}

}  // namespace

TEST_CASE("planar table matches an independent recurrence") {
  const auto ref = reference_eps(2, 2, 30);
  const auto t = build_table(2, 30);
  for (int i = 0; i <= 30; ++i) CHECK(t.epsilon(i) == to_rational(ref[static_cast<std::size_t>(i)]));
  CHECK(t.epsilon(1) == Rational(2, 3));
  CHECK(t.epsilon(2) == Rational(4, 7));
}

TEST_CASE("spatial tables match the independent recurrence for both index rules") {
  const auto dim_ref = reference_eps(3, 3, 20);
  const auto planar_ref = reference_eps(3, 2, 20);
  const auto dim_t = build_table(3, 20, IndexRule::dimensional);
  const auto planar_t = build_table(3, 20, IndexRule::planar);
  for (int i = 0; i <= 20; ++i) {
    CHECK(dim_t.epsilon(i) == to_rational(dim_ref[static_cast<std::size_t>(i)]));
    CHECK(planar_t.epsilon(i) == to_rational(planar_ref[static_cast<std::size_t>(i)]));
  }
  CHECK(dim_t.epsilon(1) == Rational(3, 4));
}

TEST_CASE("entries decrease and recorded splits reproduce the value") {
  const auto t = build_table(2, 200);
  for (int i = 1; i <= 200; ++i) {
    const auto& e = t.entries[static_cast<std::size_t>(i)];
    CHECK(e.r + 2 * e.s + 1 == i);
    const Rational x = t.epsilon(e.r) * (Rational(1) + t.epsilon(e.s));
    CHECK(e.value == x / (Rational(1) + x));
    CHECK(e.value <= t.epsilon(i - 1));
  }
}

TEST_CASE("approximation factor is (2k-1)/(2k(1-eps_k))") {
  const auto t = build_table(2, 10);
  CHECK(approx_factor(2, 1, t) == Rational(3, 2));
  CHECK(approx_factor(2, 2, t) == Rational(7, 4));
  CHECK_THROWS_AS(approx_factor(2, 11, t), std::out_of_range);
  CHECK_THROWS_AS(approx_factor(3, 1, t), std::invalid_argument);
  CHECK(net_factor(43, 42) == Rational(85, 2));
  CHECK_THROWS_AS(net_factor(42, 42), std::invalid_argument);
}

TEST_CASE("crossover search needs a long enough table") {
  const auto short_t = build_table(2, 50);
  CHECK_THROWS_AS(crossover_k(2, 42, short_t), std::out_of_range);
  const auto t = build_table(2, 1000);
  const int c = crossover_k(2, 42, t);
  // Brute recheck of the definition around the answer.
  for (int k = 43; k <= c; ++k) CHECK(approx_factor(2, k, t) < net_factor(k, 42));
  CHECK_FALSE(approx_factor(2, c + 1, t) < net_factor(c + 1, 42));
}

TEST_CASE("table CSV round trip") {
  const auto t = build_table(3, 40, IndexRule::planar);
  std::stringstream ss;
  write_table_csv(ss, t);
  const auto rows = read_table_csv(ss);
  const auto want = table_rows(t);
  REQUIRE(rows.size() == want.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].k == want[i].k);
    CHECK(rows[i].epsilon == want[i].epsilon);
    CHECK(rows[i].r == want[i].r);
    CHECK(rows[i].s == want[i].s);
    CHECK(rows[i].factor == want[i].factor);
  }
  std::stringstream bad("k,a\n1,2,3\n");
  CHECK_THROWS_AS(read_table_csv(bad), ParseError);
}
