#include "crcc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crcc/errors.hpp"

namespace crcc {

namespace {

std::string join(const VarSet& vars) {
  std::string out;
  for (const auto& v : vars) out += (out.empty() ? "" : ",") + v;
  return out;
}

double mi(const JointPmf& pmf, const VarSet& a, const VarSet& b, const VarSet& c = {}) {
  return cond_mutual_information(pmf, a, b, c);
}

const std::vector<std::string>& t1_vars() {
  static const std::vector<std::string> v{"T0", "T1", "S1", "T2", "S2"};
  return v;
}

using Terms = std::vector<std::pair<std::string, Rational>>;

Terms unit_terms(const std::vector<std::string>& vars) {
  Terms t;
  for (const auto& v : vars) t.emplace_back(v, Rational(1));
  return t;
}

// One decoder's layered codebook: the common cloud W0 (rate T0) and three
// further layers, each with the rate variable that indexes it.
struct Layer {
  std::string var;   // auxiliary random variable
  std::string rate;  // rate variable counting its codewords
};

struct DecoderLayout {
  std::string y;
  std::array<Layer, 3> layers;  // interference cloud, own cloud, own satellite
  std::vector<std::string> variables;
};

DecoderLayout layout_of(Receiver side) {
  if (side == Receiver::rx2) {
    return {"Y2", {{{"W1", "T1"}, {"W2", "t2"}, {"U2", "Z2"}}}, {"T0", "T1", "t2", "Z2", "T2", "S2"}};
  }
  return {"Y1", {{{"W2", "t2"}, {"W1", "T1"}, {"U1", "Z1"}}}, {"T0", "T1", "Z1", "t2", "S1", "T2"}};
}

// Error sets in the order of the error analysis: singletons, pairs,
// triples, then all four. Slot 0 is the common message.
const std::vector<std::vector<int>>& error_sets() {
  static const std::vector<std::vector<int>> sets{
      {0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3},
      {0, 1, 2, 3}};
  return sets;
}

}  // namespace

const std::array<std::string, 16>& BoundConstants::names() {
  static const std::array<std::string, 16> n{"A1", "B1", "C1", "D1", "E1", "F1", "G1", "H1",
                                             "A2", "B2", "C2", "D2", "E2", "F2", "G2", "H2"};
  return n;
}

std::array<double, 16> BoundConstants::values() const {
  return {a1, b1, c1, d1, e1, f1, g1, h1, a2, b2, c2, d2, e2, f2, g2, h2};
}

ConstantTable BoundConstants::table() const {
  ConstantTable t;
  const auto v = values();
  for (std::size_t i = 0; i < 16; ++i) t[names()[i]] = v[i];
  return t;
}

BoundConstants BoundConstants::from_table(const ConstantTable& t) {
  auto get = [&](const std::string& name) {
    auto it = t.find(name);
    if (it == t.end()) throw UnknownVariable("missing bound constant " + name);
    return it->second;
  };
  BoundConstants c;
  double* fields[16] = {&c.a1, &c.b1, &c.c1, &c.d1, &c.e1, &c.f1, &c.g1, &c.h1,
                        &c.a2, &c.b2, &c.c2, &c.d2, &c.e2, &c.f2, &c.g2, &c.h2};
  for (std::size_t i = 0; i < 16; ++i) *fields[i] = get(names()[i]);
  return c;
}

std::vector<std::pair<std::string, double>> CorrectionTerms::named() const {
  return {{"I(U1;W1|W0)", u1_w1},
          {"I(W2;W1,U1|W0)", w2_w1u1},
          {"I(U2;W2|W0)", u2_w2},
          {"I(W1;W2,U2|W0)", w1_w2u2},
          {"I(U2;U1,W1,W2|W0)", u2_u1w1w2}};
}

double CorrectionTerms::max_abs() const {
  return std::max({std::abs(u1_w1), std::abs(w2_w1u1), std::abs(u2_w2), std::abs(w1_w2u2), std::abs(u2_u1w1w2)});
}

std::string mi_name(const VarSet& a, const VarSet& b, const VarSet& c) {
  std::string out = "I(" + join(a) + ";" + join(b);
  if (!c.empty()) out += "|" + join(c);
  return out + ")";
}

CorrectionTerms correction_terms(const JointPmf& p) {
  CorrectionTerms t;
  t.u1_w1 = mi(p, {"U1"}, {"W1"}, {"W0"});
  t.w2_w1u1 = mi(p, {"W2"}, {"W1", "U1"}, {"W0"});
  t.u2_w2 = mi(p, {"U2"}, {"W2"}, {"W0"});
  t.w1_w2u2 = mi(p, {"W1"}, {"W2", "U2"}, {"W0"});
  t.u2_u1w1w2 = mi(p, {"U2"}, {"U1", "W1", "W2"}, {"W0"});
  return t;
}

BinningThresholds binning_thresholds(const JointPmf& p) {
  const auto t = correction_terms(p);
  return {t.u1_w1, t.w2_w1u1, t.u2_u1w1w2};
}

BoundConstants bound_constants(const JointPmf& p) {
  for (const auto& v : canonical_variables()) {
    if (!p.has(v)) throw UnknownVariable("bound constants need variable " + v);
  }
  const auto t = correction_terms(p);
  const double k2 = t.u2_w2 + t.w1_w2u2;
  BoundConstants c;
  c.a1 = mi(p, {"Y1"}, {"U1"}, {"W0", "W1", "W2"}) + t.w2_w1u1;
  c.b1 = mi(p, {"Y1"}, {"W1"}, {"W0", "U1", "W2"}) + t.u1_w1 + t.w2_w1u1;
  c.c1 = mi(p, {"Y1"}, {"W2"}, {"W0", "W1", "U1"}) + t.u1_w1;
  c.d1 = mi(p, {"Y1"}, {"U1", "W1"}, {"W0", "W2"}) + t.w2_w1u1;
  c.e1 = mi(p, {"Y1"}, {"W2", "U1"}, {"W0", "W1"});
  c.f1 = mi(p, {"Y1"}, {"W1", "W2"}, {"W0", "U1"}) + t.u1_w1;
  c.g1 = mi(p, {"Y1"}, {"W1", "W2", "U1"}, {"W0"});
  c.h1 = mi(p, {"Y1"}, {"W0", "W1", "W2", "U1"});
  c.a2 = mi(p, {"Y2"}, {"U2"}, {"W0", "W1", "W2"}) + k2 - t.u2_u1w1w2;
  c.b2 = mi(p, {"Y2"}, {"W2"}, {"W0", "W1", "U2"}) + k2 - t.w2_w1u1;
  c.c2 = mi(p, {"Y2"}, {"W1"}, {"W0", "W2", "U2"}) + k2;
  c.d2 = mi(p, {"Y2"}, {"U2", "W2"}, {"W0", "W1"}) + k2 - t.w2_w1u1 - t.u2_u1w1w2;
  c.e2 = mi(p, {"Y2"}, {"U2", "W1"}, {"W0", "W2"}) + k2 - t.u2_u1w1w2;
  c.f2 = mi(p, {"Y2"}, {"W1", "W2"}, {"U2", "W0"}) + k2 - t.w2_w1u1;
  c.g2 = mi(p, {"Y2"}, {"W1", "W2", "U2"}, {"W0"}) + k2 - t.w2_w1u1 - t.u2_u1w1w2;
  c.h2 = mi(p, {"Y2"}, {"W0", "W1", "W2", "U2"}) + k2 - t.w2_w1u1 - t.u2_u1w1w2;
  return c;
}

void check_bound_invariants(const BoundConstants& c, const JointPmf& pmf, double tol) {
  const auto v = c.values();
  for (std::size_t i = 0; i < 8; ++i) {
    if (v[i] < -tol) throw std::logic_error(BoundConstants::names()[i] + " is negative");
  }
  if (std::abs(c.h1 - c.g1 - mi(pmf, {"Y1"}, {"W0"})) > tol) throw std::logic_error("H1 - G1 != I(Y1;W0)");
  if (std::abs(c.h2 - c.g2 - mi(pmf, {"Y2"}, {"W0"})) > tol) throw std::logic_error("H2 - G2 != I(Y2;W0)");
  if (c.e1 > c.g1 + tol) throw std::logic_error("E1 exceeds G1");
}

std::vector<std::string> theorem1_labels(int receiver) {
  std::vector<std::string> out;
  const int first = receiver == 1 ? 1 : 9;
  for (int k = first; k < first + 8; ++k) out.push_back("(3-" + std::to_string(k) + ")");
  return out;
}

LinearSystem theorem1_system(const BoundConstants& c) {
  LinearSystem sys(t1_vars());
  sys.constants = c.table();
  const auto v = c.values();
  const std::vector<std::vector<std::string>> lhs{
      {"S1"}, {"T1"}, {"T2"}, {"S1", "T1"}, {"S1", "T2"}, {"T1", "T2"}, {"S1", "T1", "T2"}, {"S1", "T0", "T1", "T2"},
      {"S2"}, {"T2"}, {"T1"}, {"S2", "T2"}, {"S2", "T1"}, {"T2", "T1"}, {"S2", "T2", "T1"}, {"S2", "T0", "T2", "T1"}};
  for (std::size_t i = 0; i < 16; ++i) {
    sys.add(unit_terms(lhs[i]), v[i], SymbolicExpr::symbol(BoundConstants::names()[i]),
            "(3-" + std::to_string(i + 1) + ")");
  }
  sys.add_nonnegativity(t1_vars());
  return sys;
}

std::string to_string(Receiver r) { return r == Receiver::rx1 ? "rx1" : "rx2"; }

std::vector<std::string> appendix_a_labels(Receiver side) {
  const std::string suffix = side == Receiver::rx1 ? "'" : "";
  std::vector<std::string> out;
  for (int k = 1; k <= 15; ++k) out.push_back("(A-" + std::to_string(k) + suffix + ")");
  return out;
}

std::vector<std::string> appendix_a_claimed_redundant(Receiver side) {
  const std::string suffix = side == Receiver::rx1 ? "'" : "";
  std::vector<std::string> out;
  for (int k : {1, 5, 6, 7, 11, 12, 13}) out.push_back("(A-" + std::to_string(k) + suffix + ")");
  return out;
}

std::vector<std::string> appendix_a_prebin_variables(Receiver side) {
  if (side == Receiver::rx2) return {"t2", "Z2"};
  return {"Z1", "t2"};
}

std::vector<std::string> appendix_a_rate_variables(Receiver side) {
  if (side == Receiver::rx2) return {"T0", "T1", "T2", "S2"};
  return {"T0", "T1", "S1", "T2"};
}

LinearSystem appendix_a_system(const JointPmf& pmf, Receiver side) {
  const DecoderLayout lay = layout_of(side);
  const auto t = correction_terms(pmf);
  LinearSystem sys(lay.variables);

  // Codebook-generation bonus added to every error exponent.
  SymbolicExpr bonus;
  double bonus_value = 0.0;
  auto add_bonus = [&](const std::string& name, double value) {
    bonus += SymbolicExpr::symbol(name);
    bonus_value += value;
    sys.set_constant(name, value);
  };
  if (side == Receiver::rx2) {
    add_bonus("I(U2;W2|W0)", t.u2_w2);
    add_bonus("I(W1;W2,U2|W0)", t.w1_w2u2);
  } else {
    add_bonus("I(U1;W1|W0)", t.u1_w1);
    add_bonus("I(W2;W1,U1|W0)", t.w2_w1u1);
  }

  const auto labels = appendix_a_labels(side);
  const auto& sets = error_sets();
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto& set = sets[k];
    Terms terms;
    VarSet wrong, known{"W0"};
    const bool common = set.front() == 0;
    if (common) terms.emplace_back("T0", Rational(1));
    for (int s = 1; s <= 3; ++s) {
      const auto& layer = lay.layers[static_cast<std::size_t>(s - 1)];
      if (std::find(set.begin(), set.end(), s) != set.end()) {
        terms.emplace_back(layer.rate, Rational(1));
        wrong.push_back(layer.var);
      } else {
        known.push_back(layer.var);
      }
    }
    VarSet a{lay.y}, b, c;
    if (common) {
      b = {"W0"};
      for (const auto& layer : lay.layers) b.push_back(layer.var);
    } else {
      b = wrong;
      c = known;
    }
    const std::string name = mi_name(a, b, c);
    const double value = mi(pmf, a, b, c);
    sys.set_constant(name, value);
    sys.add(terms, value + bonus_value, SymbolicExpr::symbol(name) + bonus, labels[k]);
  }

  // Binning conditions: pre-binning rate minus bin rate covers the
  // correlation with what the encoder already knows.
  sys.set_constant("I(W2;W1,U1|W0)", t.w2_w1u1);
  if (side == Receiver::rx2) {
    sys.set_constant("I(U2;U1,W1,W2|W0)", t.u2_u1w1w2);
    sys.add({{"T2", Rational(1)}, {"t2", Rational(-1)}}, -t.w2_w1u1, SymbolicExpr::symbol("I(W2;W1,U1|W0)", -1),
            "t2 - T2 >= I(W2;W1,U1|W0)");
    sys.add({{"S2", Rational(1)}, {"Z2", Rational(-1)}}, -t.u2_u1w1w2, SymbolicExpr::symbol("I(U2;U1,W1,W2|W0)", -1),
            "Z2 - S2 >= I(U2;U1,W1,W2|W0)");
  } else {
    sys.add({{"T2", Rational(1)}, {"t2", Rational(-1)}}, -t.w2_w1u1, SymbolicExpr::symbol("I(W2;W1,U1|W0)", -1),
            "t2 - T2 >= I(W2;W1,U1|W0)");
    sys.add({{"S1", Rational(1)}, {"Z1", Rational(-1)}}, -t.u1_w1, SymbolicExpr::symbol("I(U1;W1|W0)", -1),
            "Z1 - S1 >= I(U1;W1|W0)");
  }
  sys.add_nonnegativity(lay.variables);
  return sys;
}

}  // namespace crcc
