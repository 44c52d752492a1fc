#include "crcc/probability.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "crcc/errors.hpp"

namespace crcc {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kMiClamp = 1e-12;

std::string join(const VarSet& names, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

std::size_t checked_product(const std::vector<Variable>& vars) {
  std::size_t total = 1;
  for (const auto& v : vars) {
    if (v.size < 1) throw InvalidPmf("variable " + v.name + " has empty alphabet");
    total *= static_cast<std::size_t>(v.size);
    if (total > kMaxJointEntries) {
      throw InvalidPmf("joint alphabet exceeds " + std::to_string(kMaxJointEntries) + " entries");
    }
  }
  return total;
}

// Row-major strides of the sub-tensor formed by the variables in `mask`, laid
// out per full-tensor variable (zero for variables outside the mask).
std::vector<std::size_t> subset_strides(const std::vector<Variable>& vars, std::uint64_t mask,
                                        std::size_t* subset_size = nullptr) {
  std::vector<std::size_t> strides(vars.size(), 0);
  std::size_t stride = 1;
  for (std::size_t i = vars.size(); i-- > 0;) {
    if (mask & (std::uint64_t{1} << i)) {
      strides[i] = stride;
      stride *= static_cast<std::size_t>(vars[i].size);
    }
  }
  if (subset_size) *subset_size = stride;
  return strides;
}

// Odometer over every full assignment, calling fn(full_index, digits).
template <typename Fn>
void for_each_assignment(const std::vector<Variable>& vars, std::size_t total, Fn&& fn) {
  std::vector<int> digits(vars.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, digits);
    for (std::size_t i = vars.size(); i-- > 0;) {
      if (++digits[i] < vars[i].size) break;
      digits[i] = 0;
    }
  }
}

std::size_t offset(const std::vector<int>& digits, const std::vector<std::size_t>& strides) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) idx += static_cast<std::size_t>(digits[i]) * strides[i];
  return idx;
}

double entropy_of(const Eigen::VectorXd& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
  }
  return std::max(h, 0.0);
}

}  // namespace

JointPmf::JointPmf(std::vector<Variable> variables, Eigen::VectorXd probs)
    : variables_(std::move(variables)), probs_(std::move(probs)) {
  if (variables_.size() > 32) throw InvalidPmf("at most 32 variables are supported");
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (!seen.insert(v.name).second) throw InvalidPmf("duplicate variable " + v.name);
  }
  const std::size_t total = checked_product(variables_);
  if (static_cast<std::size_t>(probs_.size()) != total) {
    throw InvalidPmf("expected " + std::to_string(total) + " probabilities, got " +
                     std::to_string(probs_.size()));
  }
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= 0.0) || !std::isfinite(probs_[i])) {
      throw InvalidPmf("negative or non-finite probability at entry " + std::to_string(i));
    }
  }
  const double sum = probs_.sum();
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "probabilities sum to " << sum;
    throw InvalidPmf(msg.str());
  }
  probs_ /= sum;
}

bool JointPmf::has(std::string_view name) const {
  return std::any_of(variables_.begin(), variables_.end(), [&](const Variable& v) { return v.name == name; });
}

std::size_t JointPmf::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  throw UnknownVariable("unknown variable " + std::string(name));
}

std::uint64_t JointPmf::mask_of(const VarSet& names) const {
  std::uint64_t mask = 0;
  for (const auto& n : names) mask |= std::uint64_t{1} << index_of(n);
  return mask;
}

Eigen::VectorXd JointPmf::marginal_probs(std::uint64_t mask) const {
  std::size_t out_size = 1;
  const auto strides = subset_strides(variables_, mask, &out_size);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out_size));
  for_each_assignment(variables_, num_entries(), [&](std::size_t flat, const std::vector<int>& digits) {
    out[static_cast<Eigen::Index>(offset(digits, strides))] += probs_[static_cast<Eigen::Index>(flat)];
  });
  return out;
}

double JointPmf::at(const std::vector<int>& assignment) const {
  const auto strides = subset_strides(variables_, ~std::uint64_t{0});
  return probs_[static_cast<Eigen::Index>(offset(assignment, strides))];
}

std::string Factor::describe() const {
  std::string s = "p(" + join(child);
  if (!parents.empty()) s += "|" + join(parents);
  return s + ")";
}

JointPmf build_joint(const FactorizationSpec& spec) {
  const auto& vars = spec.variables;
  if (vars.size() > 32) throw InvalidFactorization("at most 32 variables are supported");
  const std::size_t total = checked_product(vars);

  auto position = [&](const std::string& name, const Factor& f) -> std::size_t {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i].name == name) return i;
    }
    throw UnknownVariable(f.describe() + ": unknown variable " + name);
  };

  std::uint64_t available = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].size == 1) available |= std::uint64_t{1} << i;
  }
  std::uint64_t covered = 0;
  bool has_channel = false;
  const bool needs_channel = std::any_of(vars.begin(), vars.end(), [](const Variable& v) {
    return v.name == "Y1" || v.name == "Y2";
  });

  struct Resolved {
    std::vector<std::size_t> strides;  // per full variable, into the table
  };
  std::vector<Resolved> resolved;

  for (const auto& f : spec.factors) {
    if (f.child.empty()) throw InvalidFactorization("factor with no child variable");
    const bool pair = f.child.size() == 2;
    if (f.child.size() > 2 || (pair && !(f.child[0] == "Y1" && f.child[1] == "Y2"))) {
      throw InvalidFactorization(f.describe() + ": only the pair (Y1,Y2) may be a joint child");
    }
    if (pair) {
      if (has_channel) throw InvalidFactorization(f.describe() + ": duplicate channel factor");
      for (const auto& p : f.parents) {
        if (p != "X1" && p != "X2") {
          throw MissingChannelFactor(f.describe() + ": channel factor parents must be within {X1,X2}");
        }
      }
      has_channel = true;
    }
    std::uint64_t parent_mask = 0;
    for (const auto& p : f.parents) {
      const auto bit = std::uint64_t{1} << position(p, f);
      if (parent_mask & bit) throw InvalidFactorization(f.describe() + ": repeated parent " + p);
      if (!(available & bit)) {
        throw CyclicFactorOrder(f.describe() + ": parent " + p + " is not generated by an earlier factor");
      }
      parent_mask |= bit;
    }
    std::vector<std::size_t> order;  // table axes: parents then children
    for (const auto& p : f.parents) order.push_back(position(p, f));
    std::size_t rows = 1;
    for (const auto& p : f.parents) rows *= static_cast<std::size_t>(vars[position(p, f)].size);
    std::size_t cols = 1;
    for (const auto& c : f.child) {
      const auto idx = position(c, f);
      const auto bit = std::uint64_t{1} << idx;
      if (covered & bit) throw InvalidFactorization(f.describe() + ": variable " + c + " already has a factor");
      if (parent_mask & bit) throw CyclicFactorOrder(f.describe() + ": variable is its own parent");
      covered |= bit;
      available |= bit;
      order.push_back(idx);
      cols *= static_cast<std::size_t>(vars[idx].size);
    }
    if (f.table.size() != rows * cols) {
      throw NonStochasticTable(f.describe() + ": table has " + std::to_string(f.table.size()) +
                               " entries, expected " + std::to_string(rows * cols));
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        const double v = f.table[r * cols + c];
        if (!(v >= 0.0) || !std::isfinite(v)) {
          throw NonStochasticTable(f.describe() + ": negative or non-finite entry in row " + std::to_string(r));
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > kSumTolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << f.describe() << ": row " << r << " sums to " << sum;
        throw NonStochasticTable(msg.str());
      }
    }
    Resolved res{std::vector<std::size_t>(vars.size(), 0)};
    std::size_t stride = 1;
    for (std::size_t k = order.size(); k-- > 0;) {
      res.strides[order[k]] = stride;
      stride *= static_cast<std::size_t>(vars[order[k]].size);
    }
    resolved.push_back(std::move(res));
  }

  if (needs_channel && !has_channel) {
    throw MissingChannelFactor("no channel factor p(Y1,Y2|...) with parents within {X1,X2}");
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto bit = std::uint64_t{1} << i;
    if (!(covered & bit) && vars[i].size != 1) {
      throw InvalidFactorization("variable " + vars[i].name + " has no factor");
    }
  }

  Eigen::VectorXd probs(static_cast<Eigen::Index>(total));
  for_each_assignment(vars, total, [&](std::size_t flat, const std::vector<int>& digits) {
    double p = 1.0;
    for (std::size_t k = 0; k < spec.factors.size() && p != 0.0; ++k) {
      p *= spec.factors[k].table[offset(digits, resolved[k].strides)];
    }
    probs[static_cast<Eigen::Index>(flat)] = p;
  });
  return JointPmf(vars, std::move(probs));
}

JointPmf marginalize(const JointPmf& pmf, const VarSet& keep) {
  const std::uint64_t mask = pmf.mask_of(keep);
  std::vector<Variable> kept;
  for (std::size_t i = 0; i < pmf.num_variables(); ++i) {
    if (mask & (std::uint64_t{1} << i)) kept.push_back(pmf.variables()[i]);
  }
  return JointPmf(std::move(kept), pmf.marginal_probs(mask));
}

double entropy(const JointPmf& pmf, const VarSet& vars) {
  return entropy_of(pmf.marginal_probs(pmf.mask_of(vars)));
}

double cond_mutual_information(const JointPmf& pmf, const VarSet& a, const VarSet& b, const VarSet& c) {
  if (a.empty() || b.empty()) throw OverlappingSets("I(A;B|C) needs non-empty A and B");
  const std::uint64_t ma = pmf.mask_of(a);
  const std::uint64_t mb = pmf.mask_of(b);
  const std::uint64_t mc = pmf.mask_of(c);
  if ((ma & mb) || (ma & mc) || (mb & mc)) {
    throw OverlappingSets("I(" + join(a) + ";" + join(b) + "|" + join(c) + "): sets overlap");
  }
  const double h_ac = entropy_of(pmf.marginal_probs(ma | mc));
  const double h_bc = entropy_of(pmf.marginal_probs(mb | mc));
  const double h_abc = entropy_of(pmf.marginal_probs(ma | mb | mc));
  const double h_c = mc ? entropy_of(pmf.marginal_probs(mc)) : 0.0;
  const double mi = (h_ac + h_bc) - (h_abc + h_c);
  return mi <= kMiClamp ? 0.0 : mi;
}

FactorizationReport check_factorization(const JointPmf& pmf, const FactorizationSpec& spec, double tol) {
  FactorizationReport report;
  const auto& vars = pmf.variables();
  std::uint64_t predecessors = 0;
  for (const auto& f : spec.factors) {
    const std::uint64_t child = pmf.mask_of(f.child);
    const std::uint64_t parents = pmf.mask_of(f.parents);

    std::size_t n_pred = 1, n_pred_child = 1, n_par = 1, n_par_child = 1;
    const auto s_pred = subset_strides(vars, predecessors, &n_pred);
    const auto s_pred_child = subset_strides(vars, predecessors | child, &n_pred_child);
    const auto s_par = subset_strides(vars, parents, &n_par);
    const auto s_par_child = subset_strides(vars, parents | child, &n_par_child);
    const Eigen::VectorXd p_pred = pmf.marginal_probs(predecessors);
    const Eigen::VectorXd p_pred_child = pmf.marginal_probs(predecessors | child);
    const Eigen::VectorXd p_par = pmf.marginal_probs(parents);
    const Eigen::VectorXd p_par_child = pmf.marginal_probs(parents | child);

    double worst = 0.0;
    for_each_assignment(vars, pmf.num_entries(), [&](std::size_t, const std::vector<int>& digits) {
      const double denom = p_pred[static_cast<Eigen::Index>(offset(digits, s_pred))];
      if (!(denom > 0.0)) return;
      const double par = p_par[static_cast<Eigen::Index>(offset(digits, s_par))];
      if (!(par > 0.0)) return;
      const double full = p_pred_child[static_cast<Eigen::Index>(offset(digits, s_pred_child))] / denom;
      const double reduced = p_par_child[static_cast<Eigen::Index>(offset(digits, s_par_child))] / par;
      worst = std::max(worst, std::abs(full - reduced));
    });
    report.factors.push_back({f.describe(), worst});
    report.max_deviation = std::max(report.max_deviation, worst);
    predecessors |= child;
  }
  report.passed = report.max_deviation <= tol;
  return report;
}

}  // namespace crcc
