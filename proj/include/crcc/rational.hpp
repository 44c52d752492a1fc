#pragma once

#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "crcc/errors.hpp"

namespace crcc {

// Exact rational with 64-bit numerator/denominator. Intermediate products are
// formed in 128 bits and overflow of the reduced result throws. Coefficients
// of the rate systems are small integers, so this never comes close to the
// limit in practice.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design of Eigen scalars
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  explicit operator double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  double to_double() const { return static_cast<double>(*this); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// "p/q", or just "p" when the denominator is one.
  std::string str() const;

  /// Parses "p", "-p", "p/q". Throws ParseError.
  static Rational parse(std::string_view text);

  /// Best rational approximation with denominator <= max_den (continued
  /// fractions). Exact for doubles that are already simple fractions.
  static Rational approximate(double value, std::int64_t max_den = 1000000000);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

std::int64_t gcd_int(std::int64_t a, std::int64_t b);

}  // namespace crcc

namespace Eigen {

template <>
struct NumTraits<crcc::Rational> : GenericNumTraits<crcc::Rational> {
  using Real = crcc::Rational;
  using NonInteger = crcc::Rational;
  using Literal = crcc::Rational;
  using Nested = crcc::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace crcc {

using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace crcc
