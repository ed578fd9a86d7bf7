#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace vg {

// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}
  Rational(mpz_class n, mpz_class d);

  // Parses "n" or "n/d".
  static Rational parse(const std::string& text);
  // Closest fraction with denominator <= max_den (continued fractions).
  static Rational approximate(double x, long max_den = 1'000'000);

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // floor(value * m) and ceil(value * m) for integer m.
  long floor_mul(long m) const;
  long ceil_mul(long m) const;

  double to_double() const;
  std::string str() const;  // "n/d", or "n" when d == 1
  std::string fraction_str() const;  // always "n/d"
  bool fits_int64() const;

 private:
  mpz_class num_;
  mpz_class den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace vg
