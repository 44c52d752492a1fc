#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "crcc/rational.hpp"
#include "crcc/symbolic.hpp"

namespace crcc {

/// coeffs . x <= rhs. `symbolic`, when present, is the exact derivation of
/// `rhs` in terms of the system's named constants.
struct Inequality {
  RationalVector coeffs;
  double rhs = 0.0;
  std::optional<SymbolicExpr> symbolic;
  std::string label;

  bool is_zero() const;
  double lhs(const Eigen::VectorXd& x) const;
  double slack(const Eigen::VectorXd& x) const { return rhs - lhs(x); }
};

/// Scales coeffs, rhs and symbolic by the positive factor that turns the
/// coefficient vector into coprime integers. Zero rows are left unchanged.
void normalize(Inequality& row);

/// Conjunction of linear inequalities over named real variables.
struct LinearSystem {
  std::vector<std::string> variables;
  std::vector<Inequality> rows;
  /// Values of the named constants appearing in symbolic right-hand sides.
  ConstantTable constants;

  LinearSystem() = default;
  explicit LinearSystem(std::vector<std::string> vars) : variables(std::move(vars)) {}

  std::size_t dim() const { return variables.size(); }
  std::size_t size() const { return rows.size(); }

  /// Position of a variable; throws UnknownVariable.
  std::size_t index_of(const std::string& name) const;
  bool has_variable(const std::string& name) const;

  /// Appends sum(coeff * var) <= rhs. The row is gcd-normalised.
  Inequality& add(std::initializer_list<std::pair<std::string, Rational>> terms, double rhs,
                  std::optional<SymbolicExpr> symbolic, std::string label);
  Inequality& add(const std::vector<std::pair<std::string, Rational>>& terms, double rhs,
                  std::optional<SymbolicExpr> symbolic, std::string label);

  /// Appends -var <= 0 for each listed variable, labelled "<var> >= 0".
  void add_nonnegativity(const std::vector<std::string>& vars);

  /// Adds constants (numeric and symbolic RHS become `value`/`name`).
  void set_constant(const std::string& name, double value) { constants[name] = value; }

  const Inequality* find(const std::string& label) const;

  Eigen::MatrixXd coefficient_matrix() const;
  Eigen::VectorXd rhs_vector() const;

  /// Largest violation max(lhs - rhs) over rows (negative when strictly inside).
  double max_violation(const Eigen::VectorXd& x) const;
  bool contains(const Eigen::VectorXd& x, double tol) const { return max_violation(x) <= tol; }

  /// Largest |rhs - eval(symbolic)| over rows carrying a symbolic rhs.
  double symbolic_mismatch() const;
  /// Throws std::logic_error if a row references an undeclared variable,
  /// is not normalised, or its symbolic rhs disagrees beyond `tol`.
  void check_invariants(double tol = 1e-10) const;
};

/// Rows whose label is in `labels`, in the system's order.
LinearSystem select_rows(const LinearSystem& sys, const std::vector<std::string>& labels);

/// Same feasible set with variables permuted into `order` (a permutation).
LinearSystem reorder_variables(const LinearSystem& sys, const std::vector<std::string>& order);

/// Same rows over new variable names (positionally).
LinearSystem rename_variables(const LinearSystem& sys, const std::vector<std::string>& names);

/// Substitutes a numeric value for one variable and drops it.
LinearSystem fix_variable(const LinearSystem& sys, const std::string& var, double value);

}  // namespace crcc
