#include "crcc/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Dense>

#include "crcc/errors.hpp"
#include "crcc/geometry.hpp"
#include "crcc/lp.hpp"

namespace crcc {

namespace {

std::string wrap_label(const std::string& label) {
  if (label.find(' ') != std::string::npos || label.find('*') != std::string::npos) return "[" + label + "]";
  return label;
}

std::string scaled_label(const Rational& k, const std::string& label) {
  return (k == Rational(1) ? std::string() : k.str() + "*") + wrap_label(label);
}

LinearSystem with_rows(const LinearSystem& sys, const std::vector<std::size_t>& keep) {
  LinearSystem out(sys.variables);
  out.constants = sys.constants;
  for (auto i : keep) out.rows.push_back(sys.rows[i]);
  return out;
}

Inequality zero_row(std::size_t dim) {
  Inequality row;
  row.coeffs = RationalVector::Constant(static_cast<Eigen::Index>(dim), Rational(0));
  return row;
}

// Non-negative y with y'A = 0 and y'b < 0, turned into the row 0 <= y'b.
Inequality infeasibility_certificate(const LinearSystem& sys) {
  const Eigen::MatrixXd a = sys.coefficient_matrix();
  const Eigen::VectorXd b = sys.rhs_vector();
  const Eigen::Index m = a.rows();
  const Eigen::Index d = a.cols();
  Eigen::MatrixXd eq(d + 1, m);
  eq.topRows(d) = a.transpose();
  eq.row(d) = b.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
  rhs[d] = -1.0;
  auto sol = solve_standard_form<double>(eq, rhs, Eigen::VectorXd::Ones(m));

  Inequality row = zero_row(sys.dim());
  if (sol.status == LpStatus::infeasible) {
    row.rhs = -1.0;
    row.label = "infeasible";
    return row;
  }
  const double top = sol.x.maxCoeff();
  std::string label = "infeasible: ";
  bool first = true;
  bool symbolic = true;
  SymbolicExpr combo;
  double value = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Rational k = Rational::approximate(sol.x[i] / top, 1000000);
    if (k.is_zero()) continue;
    const auto& src = sys.rows[static_cast<std::size_t>(i)];
    value += k.to_double() * src.rhs;
    if (src.symbolic) {
      combo += *src.symbolic * k;
    } else {
      symbolic = false;
    }
    label += (first ? "" : " + ") + scaled_label(k, src.label);
    first = false;
  }
  row.rhs = value;
  if (symbolic) row.symbolic = combo;
  row.label = label;
  return row;
}

}  // namespace

bool is_feasible(const LinearSystem& sys, Eigen::VectorXd* point) {
  if (sys.rows.empty()) {
    if (point) *point = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.dim()));
    return true;
  }
  return find_feasible_point<double>(sys.coefficient_matrix(), sys.rhs_vector(), point);
}

LinearSystem fme_eliminate(const LinearSystem& sys, const std::string& var) {
  const auto j = static_cast<Eigen::Index>(sys.index_of(var));
  std::vector<std::string> vars;
  for (const auto& v : sys.variables) {
    if (v != var) vars.push_back(v);
  }
  auto drop = [&](const RationalVector& c) {
    RationalVector out(static_cast<Eigen::Index>(vars.size()));
    for (Eigen::Index i = 0, k = 0; i < c.size(); ++i) {
      if (i != j) out[k++] = c[i];
    }
    return out;
  };

  LinearSystem out(vars);
  out.constants = sys.constants;
  std::vector<const Inequality*> pos, neg;
  for (const auto& r : sys.rows) {
    const int s = r.coeffs[j].sign();
    if (s > 0) {
      pos.push_back(&r);
    } else if (s < 0) {
      neg.push_back(&r);
    } else {
      Inequality row = r;
      row.coeffs = drop(r.coeffs);
      out.rows.push_back(std::move(row));
    }
  }
  for (const auto* p : pos) {
    for (const auto* n : neg) {
      Rational kp = -n->coeffs[j];
      Rational kn = p->coeffs[j];
      // Smallest integer multipliers when both are integral.
      if (kp.is_integer() && kn.is_integer()) {
        const Rational g(gcd_int(kp.num(), kn.num()));
        kp /= g;
        kn /= g;
      }
      Inequality row;
      row.coeffs = drop(p->coeffs * kp + n->coeffs * kn);
      row.rhs = kp.to_double() * p->rhs + kn.to_double() * n->rhs;
      if (p->symbolic && n->symbolic) row.symbolic = *p->symbolic * kp + *n->symbolic * kn;
      row.label = scaled_label(kp, p->label) + " + " + scaled_label(kn, n->label);
      normalize(row);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

RedundancyResult remove_redundant_detailed(const LinearSystem& sys, double tol) {
  RedundancyResult result;
  if (!is_feasible(sys)) {
    result.infeasible = true;
    result.system = LinearSystem(sys.variables);
    result.system.constants = sys.constants;
    result.system.rows.push_back(infeasibility_certificate(sys));
    for (const auto& r : sys.rows) result.removed.push_back(r.label);
    return result;
  }
  std::vector<char> alive(sys.rows.size(), 1);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const auto& row = sys.rows[i];
    bool redundant = false;
    if (row.is_zero()) {
      redundant = row.rhs >= -tol;
    } else {
      std::vector<std::size_t> others;
      for (std::size_t k = 0; k < sys.rows.size(); ++k) {
        if (k != i && alive[k]) others.push_back(k);
      }
      if (!others.empty()) {
        const LinearSystem rest = with_rows(sys, others);
        const Eigen::VectorXd c = row.coeffs.cast<double>();
        auto sol = maximize<double>(rest.coefficient_matrix(), rest.rhs_vector(), c);
        redundant = sol.status == LpStatus::optimal && sol.value <= row.rhs + tol;
      }
    }
    if (redundant) {
      alive[i] = 0;
      result.removed.push_back(row.label);
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < alive.size(); ++i) {
    if (alive[i]) keep.push_back(i);
  }
  result.system = with_rows(sys, keep);
  return result;
}

LinearSystem remove_redundant(const LinearSystem& sys, double tol) {
  return remove_redundant_detailed(sys, tol).system;
}

namespace {

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  long double acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(acc + 0.5L);
}

}  // namespace

VertexSet enumerate_vertices(const LinearSystem& input) {
  VertexSet result;
  result.variables = input.variables;
  const std::size_t d = input.dim();
  if (d > kMaxVertexDim) {
    throw TooManyVariables("vertex enumeration supports at most " + std::to_string(kMaxVertexDim) +
                           " variables, got " + std::to_string(d));
  }

  LinearSystem sys(input.variables);
  std::set<std::vector<Rational>> seen_coeffs;
  for (const auto& r : input.rows) {
    if (r.is_zero()) {
      if (r.rhs < -kVertexSlackTol) return result;
      continue;
    }
    sys.rows.push_back(r);
  }
  Eigen::VectorXd feasible;
  if (!is_feasible(sys, &feasible)) return result;
  if (d == 0) {
    result.points.push_back(Eigen::VectorXd(0));
    return result;
  }

  const Eigen::MatrixXd a = sys.coefficient_matrix();
  const Eigen::VectorXd b = sys.rhs_vector();
  for (std::size_t i = 0; i < d; ++i) {
    for (double dir : {1.0, -1.0}) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
      c[static_cast<Eigen::Index>(i)] = dir;
      auto sol = maximize<double>(a, b, c);
      if (sol.status == LpStatus::unbounded) {
        throw Unbounded("variable " + input.variables[i] + " has no " + (dir > 0 ? "upper" : "lower") + " bound");
      }
    }
  }

  const std::size_t m = sys.rows.size();
  if (binomial_capped(m, d, 20'000'000) > 20'000'000) {
    return enumerate_vertices(remove_redundant(input));
  }

  std::vector<Eigen::VectorXd> found;
  std::vector<std::size_t> comb(d);
  for (std::size_t i = 0; i < d; ++i) comb[i] = i;
  Eigen::MatrixXd sub(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(d));
  Eigen::FullPivLU<Eigen::MatrixXd> lu;
  do {
    for (std::size_t r = 0; r < d; ++r) {
      sub.row(static_cast<Eigen::Index>(r)) = a.row(static_cast<Eigen::Index>(comb[r]));
      rhs[static_cast<Eigen::Index>(r)] = b[static_cast<Eigen::Index>(comb[r])];
    }
    lu.compute(sub);
    if (lu.rank() < static_cast<Eigen::Index>(d)) continue;
    const Eigen::VectorXd x = lu.solve(rhs);
    if (((a * x) - b).maxCoeff() > kVertexSlackTol) continue;
    const bool dup = std::any_of(found.begin(), found.end(), [&](const Eigen::VectorXd& q) {
      return (q - x).cwiseAbs().maxCoeff() <= kVertexDedupTol;
    });
    if (!dup) found.push_back(x);
  } while (detail::next_combination(comb, m));

  std::sort(found.begin(), found.end(), lex_less<double>);
  result.points = std::move(found);
  return result;
}

LinearSystem project(const LinearSystem& sys, const std::vector<std::string>& keep) {
  for (const auto& k : keep) sys.index_of(k);
  LinearSystem cur = sys;
  bool pruned = false;
  while (true) {
    std::string best;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t j = 0; j < cur.dim(); ++j) {
      const auto& v = cur.variables[j];
      if (std::find(keep.begin(), keep.end(), v) != keep.end()) continue;
      std::size_t np = 0, nn = 0;
      for (const auto& r : cur.rows) {
        const int s = r.coeffs[static_cast<Eigen::Index>(j)].sign();
        np += s > 0;
        nn += s < 0;
      }
      if (np * nn < best_cost) {
        best_cost = np * nn;
        best = v;
      }
    }
    if (best.empty()) break;
    cur = remove_redundant(fme_eliminate(cur, best));
    pruned = true;
  }
  if (!pruned) cur = remove_redundant(cur);
  return reorder_variables(cur, keep);
}

namespace {

// Inequalities of `outer` that fail somewhere on `inner`.
void containment_violations(const LinearSystem& inner, const LinearSystem& outer, char owner, double tol,
                            std::vector<Violation>& out) {
  const Eigen::MatrixXd a = inner.coefficient_matrix();
  const Eigen::VectorXd b = inner.rhs_vector();
  for (const auto& row : outer.rows) {
    if (row.is_zero()) continue;
    const Eigen::VectorXd c = row.coeffs.cast<double>();
    auto sol = a.rows() == 0 ? LpSolution<double>{LpStatus::unbounded, Eigen::VectorXd::Zero(c.size()), 0.0, c}
                             : maximize<double>(a, b, c);
    if (sol.status == LpStatus::infeasible) continue;
    if (sol.status == LpStatus::unbounded) {
      const double gain = c.dot(sol.ray);
      const double step = gain > 0 ? std::max(0.0, (row.rhs - c.dot(sol.x) + 1.0) / gain) : 0.0;
      out.push_back({row.label, owner, sol.x + step * sol.ray, std::numeric_limits<double>::infinity()});
      continue;
    }
    const double excess = sol.value - row.rhs;
    if (excess > tol) out.push_back({row.label, owner, sol.x, excess});
  }
}

}  // namespace

RegionReport systems_equal(const LinearSystem& a, const LinearSystem& b, double tol) {
  if (a.variables != b.variables) throw InputError("systems_equal needs identical variable lists");
  RegionReport report;
  report.variables = a.variables;
  const bool fa = is_feasible(a);
  const bool fb = is_feasible(b);
  if (!fa || !fb) {
    if (!fa && !fb) {
      report.verdict = Verdict::empty;
      report.notes.push_back("both systems are empty");
    } else if (!fa) {
      report.verdict = Verdict::subset_a_in_b;
      report.notes.push_back("system a is empty, system b is not");
    } else {
      report.verdict = Verdict::subset_b_in_a;
      report.notes.push_back("system b is empty, system a is not");
    }
    report.passed = report.sets_equal();
    return report;
  }
  std::vector<Violation> a_outside_b, b_outside_a;
  containment_violations(a, b, 'b', tol, a_outside_b);
  containment_violations(b, a, 'a', tol, b_outside_a);
  const bool a_in_b = a_outside_b.empty();
  const bool b_in_a = b_outside_a.empty();
  report.verdict = a_in_b && b_in_a ? Verdict::equal
                   : a_in_b         ? Verdict::subset_a_in_b
                   : b_in_a         ? Verdict::subset_b_in_a
                                    : Verdict::incomparable;
  report.violations = std::move(a_outside_b);
  report.violations.insert(report.violations.end(), b_outside_a.begin(), b_outside_a.end());
  report.passed = report.sets_equal();
  return report;
}

namespace {

RationalMatrix invert_exact(RationalMatrix m) {
  const Eigen::Index n = m.rows();
  RationalMatrix inv = RationalMatrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw SingularSubstitution("substitution is not invertible in the replaced variables");
    m.row(col).swap(m.row(piv));
    inv.row(col).swap(inv.row(piv));
    const Rational p = m(col, col);
    for (Eigen::Index k = 0; k < n; ++k) {
      m(col, k) /= p;
      inv(col, k) /= p;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      const Rational f = m(r, col);
      for (Eigen::Index k = 0; k < n; ++k) {
        m(r, k) -= f * m(col, k);
        inv(r, k) -= f * inv(col, k);
      }
    }
  }
  return inv;
}

}  // namespace

LinearSystem substitute(const LinearSystem& sys, const std::vector<VariableDefinition>& defs) {
  const auto d = static_cast<Eigen::Index>(sys.dim());
  const auto k = static_cast<Eigen::Index>(defs.size());
  std::vector<std::string> new_vars = sys.variables;
  std::vector<Eigen::Index> replaced;
  std::vector<char> is_replaced(static_cast<std::size_t>(d), 0);
  RationalMatrix c = RationalMatrix::Constant(k, d, Rational(0));
  for (Eigen::Index t = 0; t < k; ++t) {
    const auto& def = defs[static_cast<std::size_t>(t)];
    const auto r = static_cast<Eigen::Index>(sys.index_of(def.replaces));
    if (is_replaced[static_cast<std::size_t>(r)]) throw SingularSubstitution("variable " + def.replaces + " replaced twice");
    is_replaced[static_cast<std::size_t>(r)] = 1;
    replaced.push_back(r);
    new_vars[static_cast<std::size_t>(r)] = def.name;
    for (const auto& [name, coeff] : def.combination) c(t, static_cast<Eigen::Index>(sys.index_of(name))) += coeff;
  }
  {
    std::set<std::string> names(new_vars.begin(), new_vars.end());
    if (names.size() != new_vars.size()) throw SingularSubstitution("new variable name collides with an existing one");
  }
  RationalMatrix c_rr(k, k);
  for (Eigen::Index t = 0; t < k; ++t) {
    for (Eigen::Index s = 0; s < k; ++s) c_rr(t, s) = c(t, replaced[static_cast<std::size_t>(s)]);
  }
  const RationalMatrix inv = invert_exact(c_rr);

  // old_j = sum_q expr(j, q) * new_q
  RationalMatrix expr = RationalMatrix::Constant(d, d, Rational(0));
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!is_replaced[static_cast<std::size_t>(j)]) expr(j, j) = Rational(1);
  }
  for (Eigen::Index t = 0; t < k; ++t) {
    const Eigen::Index j = replaced[static_cast<std::size_t>(t)];
    for (Eigen::Index s = 0; s < k; ++s) expr(j, replaced[static_cast<std::size_t>(s)]) = inv(t, s);
    for (Eigen::Index l = 0; l < d; ++l) {
      if (is_replaced[static_cast<std::size_t>(l)]) continue;
      Rational acc(0);
      for (Eigen::Index s = 0; s < k; ++s) acc += inv(t, s) * c(s, l);
      expr(j, l) = -acc;
    }
  }

  LinearSystem out(new_vars);
  out.constants = sys.constants;
  for (const auto& r : sys.rows) {
    Inequality row = r;
    for (Eigen::Index q = 0; q < d; ++q) {
      Rational acc(0);
      for (Eigen::Index j = 0; j < d; ++j) {
        if (!r.coeffs[j].is_zero() && !expr(j, q).is_zero()) acc += r.coeffs[j] * expr(j, q);
      }
      row.coeffs[q] = acc;
    }
    normalize(row);
    out.rows.push_back(std::move(row));
  }
  return out;
}

HullSystem hull_system(const std::vector<Eigen::VectorXd>& points, const std::vector<std::string>& variables) {
  HullSystem out;
  out.system = LinearSystem(variables);
  out.vertices.variables = variables;
  const auto hull = convex_hull<double>(points, 1e-9);
  out.affine_dim = hull.affine_dim;
  out.vertices.points = hull.vertices;
  if (hull.affine_dim < 0) {
    Inequality row = zero_row(variables.size());
    row.rhs = -1.0;
    row.label = "empty";
    out.system.rows.push_back(std::move(row));
    return out;
  }
  int label = 0;
  for (const auto& f : hull.facets) {
    Inequality row;
    const double top = f.normal.cwiseAbs().maxCoeff();
    row.coeffs.resize(f.normal.size());
    for (Eigen::Index i = 0; i < f.normal.size(); ++i) row.coeffs[i] = Rational::approximate(f.normal[i] / top, 100000);
    normalize(row);
    double support = -std::numeric_limits<double>::infinity();
    for (const auto& v : hull.vertices) support = std::max(support, row.lhs(v));
    row.rhs = support;
    row.label = "hull-" + std::to_string(++label);
    const bool dup = std::any_of(out.system.rows.begin(), out.system.rows.end(), [&](const Inequality& q) {
      return q.coeffs == row.coeffs;
    });
    if (!dup) out.system.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace crcc
