#include "crcc/linear_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crcc/errors.hpp"

namespace crcc {

bool Inequality::is_zero() const {
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) return false;
  }
  return true;
}

double Inequality::lhs(const Eigen::VectorXd& x) const {
  double total = 0.0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero()) total += coeffs[i].to_double() * x[i];
  }
  return total;
}

namespace {

// Positive factor turning `coeffs` into coprime integers (1 for zero rows).
Rational primitive_scale(const RationalVector& coeffs) {
  std::int64_t lcm_den = 1;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const auto d = coeffs[i].den();
    lcm_den = (lcm_den / gcd_int(lcm_den, d)) * d;
  }
  std::int64_t g = 0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const Rational scaled = coeffs[i] * Rational(lcm_den);
    g = gcd_int(g, scaled.num());
  }
  if (g == 0) return Rational(1);
  return Rational(lcm_den, g);
}

}  // namespace

void normalize(Inequality& row) {
  const Rational k = primitive_scale(row.coeffs);
  if (k == Rational(1)) return;
  for (Eigen::Index i = 0; i < row.coeffs.size(); ++i) row.coeffs[i] *= k;
  row.rhs *= k.to_double();
  if (row.symbolic) *row.symbolic *= k;
}

std::size_t LinearSystem::index_of(const std::string& name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) throw UnknownVariable("unknown variable " + name);
  return static_cast<std::size_t>(it - variables.begin());
}

bool LinearSystem::has_variable(const std::string& name) const {
  return std::find(variables.begin(), variables.end(), name) != variables.end();
}

Inequality& LinearSystem::add(std::initializer_list<std::pair<std::string, Rational>> terms, double rhs,
                              std::optional<SymbolicExpr> symbolic, std::string label) {
  return add(std::vector<std::pair<std::string, Rational>>(terms), rhs, std::move(symbolic), std::move(label));
}

Inequality& LinearSystem::add(const std::vector<std::pair<std::string, Rational>>& terms, double rhs,
                              std::optional<SymbolicExpr> symbolic, std::string label) {
  Inequality row;
  row.coeffs = RationalVector::Constant(static_cast<Eigen::Index>(dim()), Rational(0));
  for (const auto& [name, k] : terms) row.coeffs[static_cast<Eigen::Index>(index_of(name))] += k;
  row.rhs = rhs;
  row.symbolic = std::move(symbolic);
  row.label = std::move(label);
  normalize(row);
  rows.push_back(std::move(row));
  return rows.back();
}

void LinearSystem::add_nonnegativity(const std::vector<std::string>& vars) {
  for (const auto& v : vars) add({{v, Rational(-1)}}, 0.0, SymbolicExpr(), v + " >= 0");
}

const Inequality* LinearSystem::find(const std::string& label) const {
  for (const auto& r : rows) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

Eigen::MatrixXd LinearSystem::coefficient_matrix() const {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) = rows[i].coeffs.cast<double>().transpose();
  }
  return a;
}

Eigen::VectorXd LinearSystem::rhs_vector() const {
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) b[static_cast<Eigen::Index>(i)] = rows[i].rhs;
  return b;
}

double LinearSystem::max_violation(const Eigen::VectorXd& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : rows) worst = std::max(worst, -r.slack(x));
  return worst;
}

double LinearSystem::symbolic_mismatch() const {
  double worst = 0.0;
  for (const auto& r : rows) {
    if (r.symbolic) worst = std::max(worst, std::abs(r.rhs - r.symbolic->evaluate(constants)));
  }
  return worst;
}

void LinearSystem::check_invariants(double tol) const {
  for (const auto& r : rows) {
    if (static_cast<std::size_t>(r.coeffs.size()) != dim()) {
      throw std::logic_error("row " + r.label + " has wrong coefficient count");
    }
    Inequality copy = r;
    normalize(copy);
    if (copy.coeffs != r.coeffs) throw std::logic_error("row " + r.label + " is not normalised");
    if (r.symbolic) {
      const double v = r.symbolic->evaluate(constants);
      if (std::abs(v - r.rhs) > tol * std::max(1.0, std::abs(r.rhs))) {
        throw std::logic_error("row " + r.label + ": symbolic rhs disagrees with numeric rhs");
      }
    }
  }
}

LinearSystem select_rows(const LinearSystem& sys, const std::vector<std::string>& labels) {
  LinearSystem out(sys.variables);
  out.constants = sys.constants;
  for (const auto& r : sys.rows) {
    if (std::find(labels.begin(), labels.end(), r.label) != labels.end()) out.rows.push_back(r);
  }
  return out;
}

LinearSystem reorder_variables(const LinearSystem& sys, const std::vector<std::string>& order) {
  if (order.size() != sys.dim()) throw UnknownVariable("reorder needs a permutation of the variables");
  std::vector<std::size_t> src;
  for (const auto& name : order) src.push_back(sys.index_of(name));
  LinearSystem out(order);
  out.constants = sys.constants;
  for (const auto& r : sys.rows) {
    Inequality row = r;
    for (std::size_t i = 0; i < order.size(); ++i) row.coeffs[static_cast<Eigen::Index>(i)] = r.coeffs[static_cast<Eigen::Index>(src[i])];
    out.rows.push_back(std::move(row));
  }
  return out;
}

LinearSystem fix_variable(const LinearSystem& sys, const std::string& var, double value) {
  const auto j = static_cast<Eigen::Index>(sys.index_of(var));
  std::vector<std::string> vars;
  for (const auto& v : sys.variables) {
    if (v != var) vars.push_back(v);
  }
  LinearSystem out(vars);
  out.constants = sys.constants;
  for (const auto& r : sys.rows) {
    Inequality row;
    row.coeffs.resize(static_cast<Eigen::Index>(vars.size()));
    for (Eigen::Index i = 0, k = 0; i < r.coeffs.size(); ++i) {
      if (i != j) row.coeffs[k++] = r.coeffs[i];
    }
    row.label = r.label;
    row.rhs = r.rhs;
    row.symbolic = r.symbolic;
    if (!r.coeffs[j].is_zero() && value != 0.0) {
      row.rhs -= r.coeffs[j].to_double() * value;
      row.symbolic.reset();
    }
    normalize(row);
    out.rows.push_back(std::move(row));
  }
  return out;
}

LinearSystem rename_variables(const LinearSystem& sys, const std::vector<std::string>& names) {
  if (names.size() != sys.dim()) throw UnknownVariable("rename needs one name per variable");
  LinearSystem out = sys;
  out.variables = names;
  return out;
}

}  // namespace crcc
