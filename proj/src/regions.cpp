#include "crcc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "crcc/errors.hpp"
#include "crcc/geometry.hpp"

namespace crcc {

namespace {

using Terms = std::vector<std::pair<std::string, Rational>>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

SymbolicExpr combo(std::initializer_list<std::pair<const char*, int>> parts) {
  SymbolicExpr e;
  for (const auto& [name, k] : parts) e += SymbolicExpr::symbol(name, Rational(k));
  return e;
}

bool same_points(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b, double tol) {
  auto covered = [tol](const std::vector<Eigen::VectorXd>& from, const std::vector<Eigen::VectorXd>& in) {
    return std::all_of(from.begin(), from.end(), [&](const Eigen::VectorXd& p) {
      return std::any_of(in.begin(), in.end(),
                         [&](const Eigen::VectorXd& q) { return (p - q).cwiseAbs().maxCoeff() <= tol; });
    });
  };
  return a.size() == b.size() && covered(a, b) && covered(b, a);
}

std::vector<std::string> nonnegativity_labels(const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const auto& v : vars) out.push_back(v + " >= 0");
  return out;
}

// Drops variables that no row mentions.
LinearSystem drop_unused(const LinearSystem& sys, const std::vector<std::string>& keep) {
  LinearSystem out = sys;
  for (const auto& v : sys.variables) {
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) out = fix_variable(out, v, 0.0);
  }
  return reorder_variables(out, keep);
}

void add_min_pair(LinearSystem& sys, const JointPmf& pmf, const Terms& lhs, const VarSet& b, const VarSet& c,
                  const std::string& label) {
  for (const auto* y : {"Y1", "Y2"}) {
    const std::string name = mi_name({y}, b, c);
    const double value = cond_mutual_information(pmf, {y}, b, c);
    sys.set_constant(name, value);
    sys.add(lhs, value, SymbolicExpr::symbol(name), label + (y[1] == '1' ? "a" : "b"));
  }
}

void add_single(LinearSystem& sys, const JointPmf& pmf, const Terms& lhs, const std::string& y, const VarSet& b,
                const VarSet& c, const std::string& label) {
  const std::string name = mi_name({y}, b, c);
  const double value = cond_mutual_information(pmf, {y}, b, c);
  sys.set_constant(name, value);
  sys.add(lhs, value, SymbolicExpr::symbol(name), label);
}

}  // namespace

const std::vector<std::string>& rate_triple() {
  static const std::vector<std::string> v{"R0", "R1", "R2"};
  return v;
}

LinearSystem theorem2_region(const BoundConstants& c) {
  LinearSystem sys(rate_triple());
  sys.constants = c.table();
  struct Row {
    int r0, r1, r2;
    SymbolicExpr rhs;
  };
  const std::vector<Row> rows{
      {0, 1, 0, combo({{"D1", 1}})},
      {0, 1, 0, combo({{"G1", 1}})},
      {0, 1, 0, combo({{"A1", 1}, {"C2", 1}})},
      {0, 1, 0, combo({{"A1", 1}, {"E2", 1}})},
      {0, 1, 0, combo({{"B1", 1}, {"E1", 1}})},
      {0, 1, 0, combo({{"A1", 1}, {"F2", 1}})},
      {0, 1, 0, combo({{"E1", 1}, {"C2", 1}})},
      {0, 1, 0, combo({{"E1", 1}, {"F2", 1}})},
      {0, 0, 1, combo({{"D2", 1}})},
      {0, 0, 1, combo({{"A2", 1}, {"C1", 1}})},
      {0, 0, 1, combo({{"A2", 1}, {"E1", 1}})},
      {1, 1, 0, combo({{"H1", 1}})},
      {1, 0, 1, combo({{"H2", 1}})},
      {0, 1, 1, combo({{"A1", 1}, {"G2", 1}})},
      {0, 1, 1, combo({{"E1", 1}, {"E2", 1}})},
      {0, 1, 1, combo({{"A2", 1}, {"G1", 1}})},
      {0, 1, 1, combo({{"E1", 1}, {"G2", 1}})},
      {0, 1, 1, combo({{"A2", 1}, {"B1", 1}, {"E1", 1}})},
      {0, 2, 1, combo({{"A1", 2}, {"E2", 1}, {"F2", 1}})},
      {0, 2, 1, combo({{"A1", 1}, {"E2", 1}, {"G1", 1}})},
      {0, 1, 2, combo({{"A2", 2}, {"E1", 1}, {"F1", 1}})},
      {0, 1, 2, combo({{"A2", 1}, {"E1", 1}, {"G2", 1}})},
      {1, 1, 1, combo({{"A1", 1}, {"H2", 1}})},
      {1, 1, 1, combo({{"A2", 1}, {"H1", 1}})},
      {1, 1, 1, combo({{"E1", 1}, {"H2", 1}})},
      {1, 2, 1, combo({{"A1", 1}, {"E2", 1}, {"H1", 1}})},
      {1, 1, 2, combo({{"A2", 1}, {"E1", 1}, {"H2", 1}})},
  };
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    Terms lhs;
    if (r.r0) lhs.emplace_back("R0", Rational(r.r0));
    if (r.r1) lhs.emplace_back("R1", Rational(r.r1));
    if (r.r2) lhs.emplace_back("R2", Rational(r.r2));
    sys.add(lhs, r.rhs.evaluate(sys.constants), r.rhs, "(4-" + std::to_string(k + 1) + ")");
  }
  sys.add_nonnegativity(rate_triple());
  return sys;
}

LinearSystem theorem1_rate_form(const BoundConstants& c) {
  return substitute(theorem1_system(c), {{"R0", "T0", {{"T0", Rational(1)}}},
                                         {"R1", "S1", {{"S1", Rational(1)}, {"T1", Rational(1)}}},
                                         {"R2", "S2", {{"S2", Rational(1)}, {"T2", Rational(1)}}}});
}

LinearSystem theorem1_projection(const BoundConstants& c) { return project(theorem1_rate_form(c), rate_triple()); }

HullSystem theorem1_vertex_shadow(const BoundConstants& c) {
  const auto vs = enumerate_vertices(theorem1_system(c));
  std::vector<Eigen::VectorXd> shadow;
  for (const auto& v : vs.points) {
    // (T0, T1, S1, T2, S2) -> (R0, R1, R2)
    shadow.push_back(Eigen::Vector3d(v[0], v[1] + v[2], v[3] + v[4]));
  }
  return hull_system(shadow, rate_triple());
}

RepresentationCheck compare_representations(const LinearSystem& a, const LinearSystem& b, double tol) {
  RepresentationCheck out;
  out.h = systems_equal(a, b, tol);
  const auto va = enumerate_vertices(a);
  const auto vb = enumerate_vertices(b);
  out.vertices_a = va.size();
  out.vertices_b = vb.size();
  out.v_equal = same_points(va.points, vb.points, tol);
  return out;
}

Theorem2Check check_theorem2(const JointPmf& pmf, double tol) {
  Theorem2Check out;
  out.constants = bound_constants(pmf);
  out.projection = theorem1_projection(out.constants);
  out.closed_form = theorem2_region(out.constants);
  out.shadow = theorem1_vertex_shadow(out.constants);
  out.oracle = compare_representations(out.projection, out.shadow.system, tol);
  out.report = systems_equal(out.closed_form, out.projection, tol);
  auto& rep = out.report;
  rep.notes.push_back("system a: closed-form bounds (4-1)..(4-27); system b: elimination of T1, T2");
  const bool oracle_ok = out.oracle.h.sets_equal() && out.oracle.v_equal;
  rep.notes.push_back(std::string("vertex-shadow oracle ") + (oracle_ok ? "agrees" : "DISAGREES") + " with the elimination (" +
                      std::to_string(out.oracle.vertices_a) + " vs " + std::to_string(out.oracle.vertices_b) +
                      " vertices)");
  rep.passed = rep.sets_equal() && oracle_ok;
  return out;
}

RegionReport verify_theorem2(const JointPmf& pmf, double tol) { return check_theorem2(pmf, tol).report; }

AppendixACheck check_appendix_a(const JointPmf& pmf, Receiver side, double tol) {
  AppendixACheck out;
  out.system = appendix_a_system(pmf, side);
  const auto rates = appendix_a_rate_variables(side);
  const auto prebin = appendix_a_prebin_variables(side);
  const auto error_labels = appendix_a_labels(side);

  // Redundancy among the error rows, with the decoder's own rates >= 0.
  std::vector<std::string> decoder_vars;
  for (const auto& v : out.system.variables) {
    const bool bin_rate = std::find(rates.begin(), rates.end(), v) != rates.end() && v != "T0" && v != "T1";
    if (!bin_rate) decoder_vars.push_back(v);
  }
  auto labels = error_labels;
  for (const auto& l : nonnegativity_labels(decoder_vars)) labels.push_back(l);
  const auto pruned = remove_redundant_detailed(drop_unused(select_rows(out.system, labels), decoder_vars));
  for (const auto& l : pruned.removed) {
    if (std::find(error_labels.begin(), error_labels.end(), l) != error_labels.end()) out.redundant.push_back(l);
  }

  // Eliminate the pre-binning rates from what is left.
  LinearSystem reduced(out.system.variables);
  reduced.constants = out.system.constants;
  for (const auto& r : out.system.rows) {
    if (std::find(out.redundant.begin(), out.redundant.end(), r.label) == out.redundant.end()) reduced.rows.push_back(r);
  }
  out.projection = project(reduced, rates);

  auto t1_labels = theorem1_labels(side == Receiver::rx1 ? 1 : 2);
  for (const auto& l : nonnegativity_labels(rates)) t1_labels.push_back(l);
  const auto c = bound_constants(pmf);
  out.theorem1_part = drop_unused(select_rows(theorem1_system(c), t1_labels), rates);

  out.report = systems_equal(out.projection, out.theorem1_part, tol);
  auto& rep = out.report;
  rep.notes.push_back("system a: error analysis with " + prebin[0] + ", " + prebin[1] +
                      " eliminated; system b: five-rate bounds of " + to_string(side));
  if (side == Receiver::rx1) rep.notes.push_back("inferred construction: mirror of the receiver-2 error analysis");
  std::string found;
  for (const auto& l : out.redundant) found += (found.empty() ? "" : " ") + l;
  rep.notes.push_back("redundant error rows: " + (found.empty() ? std::string("none") : found));
  const auto claimed = appendix_a_claimed_redundant(side);
  std::string missing, extra;
  for (const auto& l : claimed) {
    if (std::find(out.redundant.begin(), out.redundant.end(), l) == out.redundant.end()) missing += " " + l;
  }
  for (const auto& l : out.redundant) {
    if (std::find(claimed.begin(), claimed.end(), l) == claimed.end()) extra += " " + l;
  }
  // Ties in degenerate pmfs can make further rows redundant; only missing ones count.
  const bool redundancy_ok = missing.empty();
  if (!missing.empty()) rep.notes.push_back("expected redundant but needed:" + missing);
  if (!extra.empty()) rep.notes.push_back("also redundant for this pmf:" + extra);
  rep.passed = rep.sets_equal() && redundancy_ok;
  return out;
}

RegionReport verify_appendix_a(const JointPmf& pmf, Receiver side, double tol) {
  return check_appendix_a(pmf, side, tol).report;
}

void require_form(const JointPmf& pmf, Form form, double tol) {
  const auto rep = check_factorization(pmf, structure_of(form), tol);
  if (!rep.passed) {
    const auto worst = std::max_element(rep.factors.begin(), rep.factors.end(),
                                        [](const auto& a, const auto& b) { return a.max_deviation < b.max_deviation; });
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", worst->max_deviation);
    throw WrongFactorization("pmf does not have the " + to_string(form) + " factorization: factor " + worst->factor +
                             " deviates by " + buf);
  }
  if (form == Form::cmacc) {
    for (const auto* u : {"U1", "U2"}) {
      if (entropy(pmf, {u}) > 1e-12) throw WrongFactorization(std::string(u) + " must be constant for this reduction");
    }
  }
}

LinearSystem cmacc_region(const JointPmf& pmf) {
  require_form(pmf, Form::cmacc);
  LinearSystem sys(rate_triple());
  add_min_pair(sys, pmf, {{"R1", 1}}, {"W1"}, {"W0", "W2"}, "(6-1");
  add_min_pair(sys, pmf, {{"R2", 1}}, {"W2"}, {"W0", "W1"}, "(6-2");
  add_min_pair(sys, pmf, {{"R1", 1}, {"R2", 1}}, {"W1", "W2"}, {"W0"}, "(6-3");
  add_min_pair(sys, pmf, {{"R0", 1}, {"R1", 1}, {"R2", 1}}, {"W0", "W1", "W2"}, {}, "(6-4");
  for (auto& r : sys.rows) r.label += ")";
  sys.add_nonnegativity(rate_triple());
  return sys;
}

SiccCondition sicc_condition(const JointPmf& pmf) {
  require_form(pmf, Form::cmacc);
  SiccCondition out;
  out.margin1 = cond_mutual_information(pmf, {"W1"}, {"Y2"}, {"W2", "W0"}) -
                cond_mutual_information(pmf, {"W1"}, {"Y1"}, {"W2", "W0"});
  out.margin2 = cond_mutual_information(pmf, {"W2"}, {"Y1"}, {"W1", "W0"}) -
                cond_mutual_information(pmf, {"W2"}, {"Y2"}, {"W1", "W0"});
  out.holds = out.margin1 >= -1e-12 && out.margin2 >= -1e-12;
  return out;
}

LinearSystem sicc_region(const JointPmf& pmf) {
  const auto cond = sicc_condition(pmf);
  if (!cond.holds) {
    throw StrongInterferenceViolated("strong-interference condition fails: margins " + fmt(cond.margin1) + ", " +
                                     fmt(cond.margin2) + " bits");
  }
  LinearSystem sys(rate_triple());
  add_single(sys, pmf, {{"R1", 1}}, "Y1", {"W1"}, {"W0", "W2"}, "(8-1)");
  add_single(sys, pmf, {{"R2", 1}}, "Y2", {"W2"}, {"W0", "W1"}, "(8-2)");
  add_min_pair(sys, pmf, {{"R1", 1}, {"R2", 1}}, {"W1", "W2"}, {"W0"}, "(8-3");
  add_min_pair(sys, pmf, {{"R0", 1}, {"R1", 1}, {"R2", 1}}, {"W0", "W1", "W2"}, {}, "(8-4");
  for (std::size_t i = 2; i < sys.rows.size(); ++i) sys.rows[i].label += ")";
  sys.add_nonnegativity(rate_triple());
  return sys;
}

LinearSystem degenerate_theorem1(const BoundConstants& c) {
  auto sys = fix_variable(fix_variable(theorem1_system(c), "S1", 0.0), "S2", 0.0);
  sys = rename_variables(reorder_variables(sys, {"T0", "T1", "T2"}), rate_triple());
  return remove_redundant(sys);
}

std::string to_string(ReductionCase c) {
  switch (c) {
    case ReductionCase::ic_hk: return "ic_hk";
    case ReductionCase::ic_hodtani: return "ic_hodtani";
    case ReductionCase::icc: return "icc";
    case ReductionCase::crc: return "crc";
    case ReductionCase::cmacc: return "cmacc";
    case ReductionCase::sicc: return "sicc";
  }
  return "unknown";
}

ReductionCase parse_reduction_case(const std::string& name) {
  for (auto c : {ReductionCase::ic_hk, ReductionCase::ic_hodtani, ReductionCase::icc, ReductionCase::crc,
                 ReductionCase::cmacc, ReductionCase::sicc}) {
    if (to_string(c) == name) return c;
  }
  throw InputError("unknown reduction case " + name +
                   " (expected ic_hk, ic_hodtani, icc, crc, cmacc or sicc)");
}

Form form_of(ReductionCase c) {
  switch (c) {
    case ReductionCase::ic_hk: return Form::ic_hk;
    case ReductionCase::ic_hodtani: return Form::ic_hodtani;
    case ReductionCase::icc: return Form::icc;
    case ReductionCase::crc: return Form::crc;
    case ReductionCase::cmacc:
    case ReductionCase::sicc: return Form::cmacc;
  }
  return Form::general;
}

RegionReport verify_reduction(const JointPmf& pmf, ReductionCase rc) {
  require_form(pmf, form_of(rc));
  const auto c = bound_constants(pmf);

  if (rc == ReductionCase::cmacc || rc == ReductionCase::sicc) {
    const auto target = rc == ReductionCase::cmacc ? cmacc_region(pmf) : sicc_region(pmf);
    auto rep = systems_equal(target, degenerate_theorem1(c), 1e-8);
    rep.notes.push_back("system a: " + std::string(rc == ReductionCase::cmacc ? "compound-MAC" : "strong-interference") +
                        " region; system b: five-rate bounds with U1, U2 constant and S1 = S2 = 0");
    return rep;
  }

  // Interference-channel and cognitive-radio specialisations: the
  // factorization forces some correction terms to vanish.
  const auto t = correction_terms(pmf);
  struct Forced {
    std::string what;
    double value;
  };
  std::vector<Forced> forced;
  switch (rc) {
    case ReductionCase::ic_hk:
      for (const auto& [name, v] : t.named()) forced.push_back({name, v});
      break;
    case ReductionCase::ic_hodtani:
    case ReductionCase::icc:
      forced.push_back({"I(W2;W1,U1|W0)", t.w2_w1u1});
      forced.push_back({"I(W1;W2,U2|W0)", t.w1_w2u2});
      forced.push_back({"I(U2;U1,W1,W2|W0) - I(U2;W2|W0)", t.u2_u1w1w2 - t.u2_w2});
      break;
    default:
      break;
  }
  RegionReport rep;
  rep.verdict = Verdict::equal;
  for (const auto& f : forced) {
    if (std::abs(f.value) > 1e-12) {
      rep.violations.push_back({f.what, 'a', Eigen::VectorXd(), std::abs(f.value)});
    }
    rep.notes.push_back("forced zero: " + f.what + " = " + fmt(f.value));
  }
  for (const auto& [name, v] : t.named()) {
    const bool listed = std::any_of(forced.begin(), forced.end(), [&](const Forced& f) { return f.what == name; });
    if (!listed) rep.notes.push_back("not forced: " + name + " = " + fmt(v));
  }
  if (rc != ReductionCase::icc) rep.notes.push_back("W0 plays the time-sharing variable Q and T0 = 0");
  const auto values = c.values();
  std::string consts;
  for (std::size_t i = 0; i < 16; ++i) consts += (i ? " " : "") + BoundConstants::names()[i] + "=" + fmt(values[i]);
  rep.notes.push_back("constants: " + consts);
  rep.passed = rep.violations.empty();
  if (!rep.passed) rep.verdict = Verdict::incomparable;
  return rep;
}

ScanResult scan_union(const FamilySpec& family) {
  ScanResult out;
  out.instances = family.grid_size();
  for (std::size_t i = 0; i < out.instances; ++i) {
    JointPmf pmf;
    try {
      pmf = build_joint(family.instantiate(i));
    } catch (const InvalidFactorization&) {
      throw;
    } catch (const InputError& e) {
      throw InvalidFactorization("grid point " + family.describe_point(i) + ": " + e.what());
    }
    const auto vs = enumerate_vertices(theorem2_region(bound_constants(pmf)));
    if (vs.empty()) {
      out.skipped.push_back("grid point " + family.describe_point(i) + ": empty region, skipped");
      continue;
    }
    out.vertex_counts.push_back(vs.size());
    out.cloud.insert(out.cloud.end(), vs.points.begin(), vs.points.end());
  }
  std::sort(out.cloud.begin(), out.cloud.end(), lex_less<double>);
  out.hull = hull_system(out.cloud, rate_triple());
  return out;
}

}  // namespace crcc
