#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "crcc/family.hpp"
#include "crcc/linear_system.hpp"
#include "crcc/polytope.hpp"
#include "crcc/probability.hpp"

namespace crcc {

/// Whole file as a string; throws InputError when unreadable.
std::string read_file(const std::string& path);
/// Throws Error when the file cannot be written.
void write_file(const std::string& path, const std::string& contents);

/// Pmf file: {"variables": [{"name", "size"}], "factors": [{"child",
/// "parents", "table"}]}. "child" is a name or ["Y1", "Y2"]. Unknown fields
/// are rejected with ParseError.
FactorizationSpec parse_pmf_json(const std::string& text);
std::string pmf_to_json(const FactorizationSpec& spec);

/// Pmf file plus {"parameters": [{"name", "min", "max", "steps"}]}; table
/// entries may be numbers or expression strings over the parameters.
FamilySpec parse_family_json(const std::string& text);

/// Region file: {"variables", "inequalities": [{"coeffs": ["p/q"], "rhs",
/// "symbolic", "label"}], "constants" (optional), "vertices" (optional)}.
std::string region_to_json(const LinearSystem& sys, const VertexSet* vertices = nullptr);
LinearSystem parse_region_json(const std::string& text, VertexSet* vertices = nullptr);

/// Rows of comma-separated values, 17 significant digits.
std::string points_csv(const std::vector<std::string>& header, const std::vector<Eigen::VectorXd>& points);

/// Boundary of the (R1, R2) section of an (R0, R1, R2) region at R0 = value:
/// vertices counter-clockwise, the first repeated at the end when there are
/// three or more. Empty when the section is empty.
std::vector<Eigen::VectorXd> slice_polygon(const LinearSystem& region, const std::string& fixed, double value);

}  // namespace crcc
