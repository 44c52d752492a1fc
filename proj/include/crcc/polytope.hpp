#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "crcc/linear_system.hpp"
#include "crcc/report.hpp"

namespace crcc {

inline constexpr double kRedundancyTol = 1e-9;
inline constexpr double kVertexSlackTol = 1e-9;
inline constexpr double kVertexDedupTol = 1e-8;
inline constexpr std::size_t kMaxVertexDim = 8;

/// Vertices of a bounded system, sorted lexicographically.
struct VertexSet {
  std::vector<std::string> variables;
  std::vector<Eigen::VectorXd> points;
  double dedup_tol = kVertexDedupTol;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

/// Is {x : A x <= b} non-empty (within LP tolerance)? Optionally returns a point.
bool is_feasible(const LinearSystem& sys, Eigen::VectorXd* point = nullptr);

/// Eliminates one variable by pairing every positive-coefficient row with
/// every negative one. Rows not involving `var` are kept. Throws UnknownVariable.
LinearSystem fme_eliminate(const LinearSystem& sys, const std::string& var);

struct RedundancyResult {
  LinearSystem system;               // irredundant rows, or the certificate row
  std::vector<std::string> removed;  // labels dropped, in scan order
  bool infeasible = false;
};

/// Drops every row whose left-hand side, maximised over the remaining rows,
/// stays within rhs + tol. Rows are scanned in system order. An empty input
/// yields a single certificate row 0 <= negative built from a non-negative
/// combination of the input rows.
RedundancyResult remove_redundant_detailed(const LinearSystem& sys, double tol = kRedundancyTol);
LinearSystem remove_redundant(const LinearSystem& sys, double tol = kRedundancyTol);

/// All vertices by solving every d-subset of rows. Throws TooManyVariables
/// (more than 8 variables) or Unbounded. Empty systems give an empty set.
VertexSet enumerate_vertices(const LinearSystem& sys);

/// Shadow of the feasible set on `keep` (in that order): eliminates the other
/// variables one at a time, cheapest pairing first, pruning after each step.
LinearSystem project(const LinearSystem& sys, const std::vector<std::string>& keep);

/// Mutual containment test by LP. Violations carry the maximising witness.
RegionReport systems_equal(const LinearSystem& a, const LinearSystem& b, double tol);

/// `name` := sum(coeff * old variable), taking the place of `replaces`.
struct VariableDefinition {
  std::string name;
  std::string replaces;
  std::map<std::string, Rational> combination;
};

/// Rewrites the system in the new coordinates (exactly). Throws
/// SingularSubstitution when the definitions cannot be solved for the
/// replaced variables.
LinearSystem substitute(const LinearSystem& sys, const std::vector<VariableDefinition>& defs);

/// H-representation of the convex hull of a point cloud (dimension <= 3 is
/// the intended use). Facet normals are rationalised and each right-hand
/// side is the exact support value over the vertices.
struct HullSystem {
  LinearSystem system;
  VertexSet vertices;
  int affine_dim = -1;
};
HullSystem hull_system(const std::vector<Eigen::VectorXd>& points, const std::vector<std::string>& variables);

}  // namespace crcc
