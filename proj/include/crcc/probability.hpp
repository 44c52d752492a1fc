#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace crcc {

struct Variable {
  std::string name;
  int size = 1;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Names of a group of random variables, e.g. {"W0", "W1"}.
using VarSet = std::vector<std::string>;

/// Canonical variable order of a full channel instance.
inline const VarSet& canonical_variables() {
  static const VarSet names{"W0", "W1", "U1", "W2", "U2", "X1", "X2", "Y1", "Y2"};
  return names;
}

/// Largest dense tensor we are willing to materialise.
inline constexpr std::size_t kMaxJointEntries = 1'000'000;

/// Dense joint probability tensor over named finite-alphabet variables,
/// row-major in variable order (last variable fastest).
class JointPmf {
 public:
  JointPmf() = default;
  /// Validates entries (non-negative, total within 1e-9 of one) and
  /// renormalises. Throws InvalidPmf.
  JointPmf(std::vector<Variable> variables, Eigen::VectorXd probs);

  const std::vector<Variable>& variables() const { return variables_; }
  const Eigen::VectorXd& probs() const { return probs_; }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_entries() const { return static_cast<std::size_t>(probs_.size()); }

  bool has(std::string_view name) const;
  /// Position of a variable; throws UnknownVariable.
  std::size_t index_of(std::string_view name) const;
  int size_of(std::string_view name) const { return variables_[index_of(name)].size; }

  /// Bit mask (over variable positions) of a set of names; throws UnknownVariable.
  std::uint64_t mask_of(const VarSet& names) const;

  /// Probability vector of the marginal on the variables in `mask`, row-major
  /// in this pmf's variable order.
  Eigen::VectorXd marginal_probs(std::uint64_t mask) const;

  /// Probability of one full assignment.
  double at(const std::vector<int>& assignment) const;

 private:
  std::vector<Variable> variables_;
  Eigen::VectorXd probs_;
};

/// One conditional factor p(child | parents). The table is row-major with
/// parents in listed order, then the child variable(s), last index fastest.
struct Factor {
  VarSet child;  // a single variable, or the pair {"Y1", "Y2"}
  VarSet parents;
  std::vector<double> table;

  /// Human-readable "p(W2|W0,W1,U1)".
  std::string describe() const;
};

/// Ordered product of conditional factors. Variables of size one may be left
/// without a factor; they are treated as point masses.
struct FactorizationSpec {
  std::vector<Variable> variables;
  std::vector<Factor> factors;
};

/// Product of all factor tables. Throws NonStochasticTable, CyclicFactorOrder,
/// MissingChannelFactor, InvalidFactorization.
JointPmf build_joint(const FactorizationSpec& spec);

/// Sums out every variable not in `keep`; the result keeps this pmf's order.
JointPmf marginalize(const JointPmf& pmf, const VarSet& keep);

/// Shannon entropy in bits of the marginal on `vars`.
double entropy(const JointPmf& pmf, const VarSet& vars);

/// I(A;B|C) in bits from four joint entropies. Values within 1e-12 of zero,
/// and negative rounding residue, are clamped to exactly zero.
double cond_mutual_information(const JointPmf& pmf, const VarSet& a, const VarSet& b,
                               const VarSet& c = {});

struct FactorDeviation {
  std::string factor;
  double max_deviation = 0.0;
};

struct FactorizationReport {
  std::vector<FactorDeviation> factors;
  double max_deviation = 0.0;
  bool passed = true;
};

/// For every factor, the largest |p(child | all earlier children) -
/// p(child | parents)| over assignments of positive probability. Only the
/// parent structure of `spec` is used; tables may be empty.
FactorizationReport check_factorization(const JointPmf& pmf, const FactorizationSpec& spec,
                                        double tol);

}  // namespace crcc
