#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "crcc/probability.hpp"

namespace crcc {

/// Arithmetic over numbers and named parameters: + - * / and parentheses.
class Expression {
 public:
  Expression() = default;
  /// Throws ParseError.
  static Expression parse(std::string_view text);
  static Expression constant(double value);

  /// Throws UnknownVariable for an unbound parameter.
  double evaluate(const std::map<std::string, double>& params) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

struct Parameter {
  std::string name;
  double min = 0.0, max = 0.0;
  int steps = 1;

  /// `steps` evenly spaced values from min to max (just min when steps is 1).
  std::vector<double> values() const;
};

struct FamilyFactor {
  VarSet child;
  VarSet parents;
  std::vector<Expression> table;
};

/// A factorization whose table entries are expressions over a parameter grid.
struct FamilySpec {
  std::vector<Variable> variables;
  std::vector<FamilyFactor> factors;
  std::vector<Parameter> parameters;

  static constexpr std::size_t kMaxGrid = 100000;

  std::size_t grid_size() const;
  /// Parameter values at a grid index; the first parameter varies slowest.
  std::map<std::string, double> grid_point(std::size_t index) const;
  /// "p=0.25, q=0.5"
  std::string describe_point(std::size_t index) const;
  /// Concrete tables at a grid index. Throws InvalidFactorization naming the
  /// grid point when an entry leaves [0, 1] or a row does not sum to one.
  FactorizationSpec instantiate(std::size_t index) const;
};

}  // namespace crcc
