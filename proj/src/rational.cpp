#include "crcc/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

namespace crcc {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

std::int64_t gcd_int(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(gcd_wide(a, b));
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < -kMax || den > kMax) throw RationalOverflow("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    *this = from_wide(static_cast<__int128>(num_) + o.num_, den_);
  } else {
    *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                      static_cast<__int128>(den_) * o.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  *this = from_wide(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  *this = from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
  return *this;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    if (!part.empty() && part.front() == '+') part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw ParseError("invalid rational '" + std::string(text) + "'");
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational Rational::approximate(double value, std::int64_t max_den) {
  if (!std::isfinite(value)) throw std::domain_error("cannot approximate non-finite value");
  const bool negative = value < 0;
  double x = std::fabs(value);
  if (x > 9.0e18) throw RationalOverflow("value too large for rational approximation");
  // Convergents h/k of the continued fraction of x.
  __int128 h_prev = 1, h = static_cast<__int128>(std::floor(x));
  __int128 k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64 && frac > 0.0; ++iter) {
    if (std::fabs(static_cast<double>(h) / static_cast<double>(k) - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x) break;
    double inv = 1.0 / frac;
    auto a = static_cast<__int128>(std::floor(inv));
    frac = inv - std::floor(inv);
    __int128 h_next = a * h + h_prev;
    __int128 k_next = a * k + k_prev;
    if (k_next > max_den || h_next > kMax) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  return from_wide(negative ? -h : h, k);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace crcc
