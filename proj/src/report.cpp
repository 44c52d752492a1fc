#include "crcc/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace crcc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equal: return "equal";
    case Verdict::subset_a_in_b: return "subset_a_in_b";
    case Verdict::subset_b_in_a: return "subset_b_in_a";
    case Verdict::incomparable: return "incomparable";
    case Verdict::empty: return "empty";
  }
  return "unknown";
}

std::string format_report(const RegionReport& report) {
  std::ostringstream out;
  out << (report.passed ? "PASS" : "FAIL") << " (" << to_string(report.verdict) << ")\n";
  for (const auto& note : report.notes) out << "  note: " << note << "\n";
  for (const auto& v : report.violations) {
    char buf[64];
    if (std::isinf(v.magnitude)) {
      std::snprintf(buf, sizeof buf, "unbounded");
    } else {
      std::snprintf(buf, sizeof buf, "%.12g", v.magnitude);
    }
    out << "  violated: " << v.label << " of system " << v.owner << " by " << buf << " at (";
    for (Eigen::Index i = 0; i < v.witness.size(); ++i) {
      if (i) out << ", ";
      if (static_cast<std::size_t>(i) < report.variables.size()) out << report.variables[static_cast<std::size_t>(i)] << "=";
      std::snprintf(buf, sizeof buf, "%.17g", v.witness[i]);
      out << buf;
    }
    out << ")\n";
  }
  return out.str();
}

}  // namespace crcc
