#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace crcc {

enum class Verdict { equal, subset_a_in_b, subset_b_in_a, incomparable, empty };

std::string to_string(Verdict v);

/// An inequality of one system that fails at a point of the other system.
struct Violation {
  std::string label;
  char owner = 'b';          // system owning the violated inequality ('a' or 'b')
  Eigen::VectorXd witness;   // point of the other system
  double magnitude = 0.0;    // lhs(witness) - rhs
};

/// Outcome of comparing two regions (or of a verification built on such a
/// comparison). `passed` is the verification result; for a plain comparison
/// it means set equality.
struct RegionReport {
  Verdict verdict = Verdict::equal;
  bool passed = true;
  std::vector<std::string> variables;
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool sets_equal() const { return verdict == Verdict::equal || verdict == Verdict::empty; }
};

/// Multi-line human-readable rendering, first line "PASS" or "FAIL".
std::string format_report(const RegionReport& report);

}  // namespace crcc
