#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "crcc/linear_system.hpp"
#include "crcc/probability.hpp"

namespace crcc {

/// The sixteen right-hand sides of the five-rate system, in bits.
/// Receiver-2 constants carry binning penalties and may be negative.
struct BoundConstants {
  double a1 = 0, b1 = 0, c1 = 0, d1 = 0, e1 = 0, f1 = 0, g1 = 0, h1 = 0;
  double a2 = 0, b2 = 0, c2 = 0, d2 = 0, e2 = 0, f2 = 0, g2 = 0, h2 = 0;

  /// "A1" ... "H1", "A2" ... "H2".
  static const std::array<std::string, 16>& names();
  std::array<double, 16> values() const;
  ConstantTable table() const;
  static BoundConstants from_table(const ConstantTable& t);
};

/// I(U1;W1|W0), I(W2;W1U1|W0), I(U2;W2|W0), I(W1;W2U2|W0), I(U2;U1W1W2|W0).
struct CorrectionTerms {
  double u1_w1 = 0, w2_w1u1 = 0, u2_w2 = 0, w1_w2u2 = 0, u2_u1w1w2 = 0;

  std::vector<std::pair<std::string, double>> named() const;
  double max_abs() const;
};

/// Minimum excess of pre-binning over bin rate for each of the three
/// binning stages: U1 given W1, W2 given (W1, U1), U2 given (U1, W1, W2).
struct BinningThresholds {
  double u1 = 0, w2 = 0, u2 = 0;
};

/// "I(Y2;W1|W0,W2,U2)", "I(Y1;W0,W1,W2,U1)".
std::string mi_name(const VarSet& a, const VarSet& b, const VarSet& c = {});

BoundConstants bound_constants(const JointPmf& pmf);
CorrectionTerms correction_terms(const JointPmf& pmf);
BinningThresholds binning_thresholds(const JointPmf& pmf);

/// Throws std::logic_error when a structural invariant of the constants
/// (non-negative receiver-1 values, H - G = I(Y;W0), E1 <= G1) fails.
void check_bound_invariants(const BoundConstants& c, const JointPmf& pmf, double tol = 1e-10);

/// Five-rate system over (T0, T1, S1, T2, S2): sixteen labelled bounds
/// "(3-1)" ... "(3-16)" with symbolic right-hand sides A1 ... H2, then the
/// five non-negativity rows.
LinearSystem theorem1_system(const BoundConstants& c);

/// Labels of the receiver-1 ("(3-1)".."(3-8)") or receiver-2 bounds.
std::vector<std::string> theorem1_labels(int receiver);

enum class Receiver { rx1, rx2 };
std::string to_string(Receiver r);

/// Error-analysis system of one decoder with its pre-binning rates.
///
/// rx2 is over (T0, T1, t2, Z2, T2, S2): fifteen rows "(A-1)" ... "(A-15)",
/// the binning conditions t2 - T2 >= I(W2;W1U1|W0) and
/// Z2 - S2 >= I(U2;U1W1W2|W0), and non-negativity of all six rates.
///
/// rx1 is the mirror over (T0, T1, Z1, t2, S1, T2), labels "(A-1')" ...
/// "(A-15')": the decoder sees W2 as the interference cloud (rate t2,
/// binned down to T2), W1 as its own cloud (T1, not binned) and U1 as its
/// satellite (Z1, binned down to S1 with Z1 - S1 >= I(U1;W1|W0)).
LinearSystem appendix_a_system(const JointPmf& pmf, Receiver side);

/// Row labels of the error-analysis part of appendix_a_system.
std::vector<std::string> appendix_a_labels(Receiver side);
/// Labels the error analysis expects to be implied by the all-rates row.
std::vector<std::string> appendix_a_claimed_redundant(Receiver side);
/// Pre-binning variables eliminated when reducing to the five-rate bounds.
std::vector<std::string> appendix_a_prebin_variables(Receiver side);
/// The five-rate variables of that receiver's bounds, in system order.
std::vector<std::string> appendix_a_rate_variables(Receiver side);

}  // namespace crcc
