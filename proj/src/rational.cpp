#include "vg/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace vg {

Rational::Rational(mpz_class n, mpz_class d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw std::domain_error("zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g > 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(text), mpz_class(1));
    return Rational(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

Rational Rational::approximate(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot approximate a non-finite value");
  const bool neg = x < 0;
  double v = std::abs(x);
  // Convergents h/k of the continued fraction of v.
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(v);
    if (a > 1e15) break;
    const long ai = static_cast<long>(a);
    const long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    const long h2 = ai * h1 + h0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = v - a;
    if (frac < 1e-12) break;
    v = 1.0 / frac;
  }
  if (k1 == 0) throw std::invalid_argument("value too large to approximate");
  return Rational(neg ? -h1 : h1, k1);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

long Rational::floor_mul(long m) const {
  mpz_class q;
  mpz_class prod = num_ * m;
  mpz_fdiv_q(q.get_mpz_t(), prod.get_mpz_t(), den_.get_mpz_t());
  return q.get_si();
}

long Rational::ceil_mul(long m) const {
  mpz_class q;
  mpz_class prod = num_ * m;
  mpz_cdiv_q(q.get_mpz_t(), prod.get_mpz_t(), den_.get_mpz_t());
  return q.get_si();
}

double Rational::to_double() const {
  mpq_class q(num_, den_);
  return q.get_d();
}

std::string Rational::str() const {
  if (den_ == 1) return num_.get_str();
  return fraction_str();
}

std::string Rational::fraction_str() const { return num_.get_str() + "/" + den_.get_str(); }

bool Rational::fits_int64() const {
  // mpz_fits_slong_p is 64-bit on the LP64 targets we build for.
  return mpz_fits_slong_p(num_.get_mpz_t()) && mpz_fits_slong_p(den_.get_mpz_t());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace vg
