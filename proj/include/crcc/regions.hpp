#pragma once

#include <string>
#include <vector>

#include "crcc/bounds.hpp"
#include "crcc/family.hpp"
#include "crcc/forms.hpp"
#include "crcc/polytope.hpp"
#include "crcc/report.hpp"

namespace crcc {

/// Variables of the rate-triple space.
const std::vector<std::string>& rate_triple();

/// The 27 closed-form bounds "(4-1)" ... "(4-27)" over (R0, R1, R2) with
/// symbolic right-hand sides, then three non-negativity rows.
LinearSystem theorem2_region(const BoundConstants& c);

/// Five-rate system rewritten with R0 = T0, R1 = S1 + T1, R2 = S2 + T2;
/// variables (R0, T1, R1, T2, R2).
LinearSystem theorem1_rate_form(const BoundConstants& c);

/// Elimination of T1, T2 from theorem1_rate_form, over (R0, R1, R2).
LinearSystem theorem1_projection(const BoundConstants& c);

/// Independent oracle for theorem1_projection: enumerate the five-rate
/// vertices, map each to (T0, S1 + T1, S2 + T2) and take the hull.
HullSystem theorem1_vertex_shadow(const BoundConstants& c);

/// Both representations of two systems agree: every vertex of one is a
/// vertex of the other (within `tol`), and the half-space comparison passes.
struct RepresentationCheck {
  RegionReport h;
  bool v_equal = true;
  std::size_t vertices_a = 0, vertices_b = 0;
};
RepresentationCheck compare_representations(const LinearSystem& a, const LinearSystem& b, double tol);

/// Everything computed while checking the closed-form region on one instance.
struct Theorem2Check {
  BoundConstants constants;
  LinearSystem projection;      // system b of `report`
  LinearSystem closed_form;     // system a of `report`
  HullSystem shadow;
  RepresentationCheck oracle;   // projection against shadow
  RegionReport report;          // closed_form against projection
};

Theorem2Check check_theorem2(const JointPmf& pmf, double tol = 1e-8);

/// Closed-form region against the elimination result; fails when they
/// differ, or when the elimination disagrees with the vertex-shadow oracle.
RegionReport verify_theorem2(const JointPmf& pmf, double tol = 1e-8);

struct AppendixACheck {
  LinearSystem system;          // appendix_a_system
  LinearSystem projection;      // pre-binning rates eliminated
  LinearSystem theorem1_part;   // that receiver's five-rate bounds
  std::vector<std::string> redundant;  // error-analysis rows found redundant
  RegionReport report;
};

/// Passes when the projection equals the five-rate bounds and every row the
/// derivation calls redundant is redundant; extra redundant rows are noted.
AppendixACheck check_appendix_a(const JointPmf& pmf, Receiver side, double tol = 1e-8);
RegionReport verify_appendix_a(const JointPmf& pmf, Receiver side, double tol = 1e-8);

/// Throws WrongFactorization when `pmf` deviates from `form` beyond `tol`.
void require_form(const JointPmf& pmf, Form form, double tol = 1e-9);

/// Compound-MAC region: each two-receiver minimum as two rows, labels
/// "(6-ka)" (receiver 1) and "(6-kb)" (receiver 2), then non-negativity.
/// Requires the compound-MAC factorization with constant U1, U2.
LinearSystem cmacc_region(const JointPmf& pmf);

struct SiccCondition {
  bool holds = false;
  double margin1 = 0.0;  // I(W1;Y2|W2W0) - I(W1;Y1|W2W0)
  double margin2 = 0.0;  // I(W2;Y1|W1W0) - I(W2;Y2|W1W0)
};
SiccCondition sicc_condition(const JointPmf& pmf);

/// Strong-interference region; throws StrongInterferenceViolated when the
/// condition fails.
LinearSystem sicc_region(const JointPmf& pmf);

/// Five-rate system with S1 = S2 = 0 over (R0, R1, R2) = (T0, T1, T2),
/// redundant rows removed.
LinearSystem degenerate_theorem1(const BoundConstants& c);

enum class ReductionCase { ic_hk, ic_hodtani, icc, crc, cmacc, sicc };
std::string to_string(ReductionCase c);
/// Throws InputError on an unknown name.
ReductionCase parse_reduction_case(const std::string& name);
Form form_of(ReductionCase c);

RegionReport verify_reduction(const JointPmf& pmf, ReductionCase c);

struct ScanResult {
  /// Every per-instance vertex (duplicates across instances kept), sorted.
  std::vector<Eigen::VectorXd> cloud;
  HullSystem hull;
  std::size_t instances = 0;
  std::vector<std::size_t> vertex_counts;  // per non-empty instance
  std::vector<std::string> skipped;        // one note per empty instance
};

ScanResult scan_union(const FamilySpec& family);

}  // namespace crcc
