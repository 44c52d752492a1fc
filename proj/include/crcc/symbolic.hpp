#pragma once

#include <map>
#include <string>
#include <string_view>

#include "crcc/rational.hpp"

namespace crcc {

/// Values of named constants, e.g. {"A1": 0.31, "I(Y2;W2|W0)": 0.05}.
using ConstantTable = std::map<std::string, double>;

/// Exact rational combination of named constants plus a rational scalar,
/// e.g. "2*A1 + E2 + F2". Names are any space-free tokens starting with a
/// letter and containing no '*'.
class SymbolicExpr {
 public:
  SymbolicExpr() = default;
  explicit SymbolicExpr(Rational scalar) : scalar_(scalar) {}

  static SymbolicExpr symbol(const std::string& name, Rational coeff = Rational(1));

  const std::map<std::string, Rational>& terms() const { return terms_; }
  const Rational& scalar() const { return scalar_; }
  bool is_zero() const { return terms_.empty() && scalar_.is_zero(); }

  SymbolicExpr& operator+=(const SymbolicExpr& o);
  SymbolicExpr& operator-=(const SymbolicExpr& o);
  SymbolicExpr& operator*=(const Rational& k);
  friend SymbolicExpr operator+(SymbolicExpr a, const SymbolicExpr& b) { return a += b; }
  friend SymbolicExpr operator-(SymbolicExpr a, const SymbolicExpr& b) { return a -= b; }
  friend SymbolicExpr operator*(SymbolicExpr a, const Rational& k) { return a *= k; }
  friend SymbolicExpr operator*(const Rational& k, SymbolicExpr a) { return a *= k; }
  friend bool operator==(const SymbolicExpr&, const SymbolicExpr&) = default;

  /// Numeric value; throws UnknownVariable when a name is missing.
  double evaluate(const ConstantTable& values) const;

  std::string str() const;
  static SymbolicExpr parse(std::string_view text);

 private:
  std::map<std::string, Rational> terms_;
  Rational scalar_;
};

}  // namespace crcc
