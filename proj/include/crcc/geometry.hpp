#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "crcc/lp.hpp"

namespace crcc {

template <typename Scalar>
using PointOf = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// normal . x <= offset, with a unit-length normal.
template <typename Scalar>
struct HalfSpace {
  PointOf<Scalar> normal;
  Scalar offset = 0;
};

template <typename Scalar>
struct Hull {
  std::vector<PointOf<Scalar>> vertices;
  /// Facets of the hull inside its affine span, followed by pairs of
  /// opposite half-spaces pinning the affine span itself.
  std::vector<HalfSpace<Scalar>> facets;
  int affine_dim = -1;  // -1 for an empty point set
};

/// Lexicographic order with exact comparison.
template <typename Scalar>
bool lex_less(const PointOf<Scalar>& a, const PointOf<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

/// Sorts lexicographically and drops points within `tol` (max-norm) of a kept one.
template <typename Scalar>
std::vector<PointOf<Scalar>> dedupe_points(std::vector<PointOf<Scalar>> pts, Scalar tol) {
  std::sort(pts.begin(), pts.end(), lex_less<Scalar>);
  std::vector<PointOf<Scalar>> out;
  for (auto& p : pts) {
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const PointOf<Scalar>& q) { return (p - q).cwiseAbs().maxCoeff() <= tol; });
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

/// Points that are not convex combinations of the others (LP per point).
template <typename Scalar>
std::vector<PointOf<Scalar>> extreme_points(const std::vector<PointOf<Scalar>>& pts) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = PointOf<Scalar>;
  if (pts.size() <= 1) return pts;
  const Eigen::Index d = pts.front().size();
  const auto n = static_cast<Eigen::Index>(pts.size());
  std::vector<PointOf<Scalar>> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    Matrix a(d + 1, n - 1);
    for (Eigen::Index j = 0, k = 0; j < n; ++j) {
      if (j == i) continue;
      a.col(k).head(d) = pts[static_cast<std::size_t>(j)];
      a(d, k) = Scalar(1);
      ++k;
    }
    Vector b(d + 1);
    b.head(d) = pts[static_cast<std::size_t>(i)];
    b[d] = Scalar(1);
    auto sol = solve_standard_form<Scalar>(a, b, Vector::Zero(n - 1));
    if (sol.status == LpStatus::infeasible) out.push_back(pts[static_cast<std::size_t>(i)]);
  }
  return out;
}

namespace detail {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Convex hull of a small point cloud in low dimension, robust to
/// lower-dimensional input. Facets are found by brute force over
/// affinely independent subsets of extreme points, so this is meant for at
/// most a few hundred extreme points.
template <typename Scalar>
Hull<Scalar> convex_hull(const std::vector<PointOf<Scalar>>& input, Scalar tol = Scalar(1e-9)) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = PointOf<Scalar>;
  Hull<Scalar> hull;
  auto pts = dedupe_points<Scalar>(input, tol);
  if (pts.empty()) return hull;
  const Eigen::Index d = pts.front().size();
  const auto n = static_cast<Eigen::Index>(pts.size());

  Scalar scale(1);
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  Vector center = Vector::Zero(d);
  for (const auto& p : pts) center += p;
  center /= Scalar(n);

  Matrix centered(n, d);
  for (Eigen::Index i = 0; i < n; ++i) centered.row(i) = (pts[static_cast<std::size_t>(i)] - center).transpose();
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > tol * scale * std::sqrt(Scalar(n))) ++k;
  }
  hull.affine_dim = static_cast<int>(k);
  const Matrix basis = svd.matrixV().leftCols(k);
  const Matrix complement = svd.matrixV().rightCols(d - k);

  // Coordinates inside the affine span.
  std::vector<Vector> local;
  local.reserve(pts.size());
  for (const auto& p : pts) local.push_back(basis.transpose() * (p - center));
  std::vector<std::size_t> extreme_idx;
  if (k == 0) {
    extreme_idx.push_back(0);
  } else {
    auto ext = extreme_points<Scalar>(local);
    for (const auto& e : ext) {
      for (std::size_t i = 0; i < local.size(); ++i) {
        if (local[i] == e) {
          extreme_idx.push_back(i);
          break;
        }
      }
    }
  }
  for (auto i : extreme_idx) hull.vertices.push_back(pts[i]);
  std::sort(hull.vertices.begin(), hull.vertices.end(), lex_less<Scalar>);

  std::vector<HalfSpace<Scalar>> local_facets;
  auto add_local = [&](Vector normal, Scalar offset) {
    const Scalar len = normal.norm();
    normal /= len;
    offset /= len;
    for (const auto& f : local_facets) {
      if ((f.normal - normal).cwiseAbs().maxCoeff() <= Scalar(1e3) * tol && std::abs(f.offset - offset) <= tol * scale * Scalar(1e3)) return;
    }
    local_facets.push_back({std::move(normal), offset});
  };

  if (k == 1) {
    Scalar lo = local[extreme_idx[0]][0], hi = lo;
    for (auto i : extreme_idx) {
      lo = std::min(lo, local[i][0]);
      hi = std::max(hi, local[i][0]);
    }
    add_local(Vector::Constant(1, Scalar(1)), hi);
    add_local(Vector::Constant(1, Scalar(-1)), -lo);
  } else if (k >= 2) {
    std::vector<std::size_t> comb(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = i;
    const std::size_t m = extreme_idx.size();
    if (m >= comb.size()) {
      do {
        Matrix diffs(k - 1, k);
        const Vector& base = local[extreme_idx[comb[0]]];
        for (Eigen::Index r = 1; r < k; ++r) diffs.row(r - 1) = (local[extreme_idx[comb[static_cast<std::size_t>(r)]]] - base).transpose();
        Eigen::JacobiSVD<Matrix> ksvd(diffs, Eigen::ComputeFullV);
        const auto& ks = ksvd.singularValues();
        if (ks.size() < k - 1 || ks[k - 2] <= tol * scale) continue;  // not affinely independent
        Vector normal = ksvd.matrixV().col(k - 1);
        const Scalar offset = normal.dot(base);
        bool below = true, above = true;
        for (auto i : extreme_idx) {
          const Scalar s = normal.dot(local[i]) - offset;
          if (s > tol * scale) below = false;
          if (s < -tol * scale) above = false;
          if (!below && !above) break;
        }
        if (below) add_local(normal, offset);
        if (above) add_local(-normal, -offset);
      } while (detail::next_combination(comb, m));
    }
  }

  for (const auto& f : local_facets) {
    Vector normal = basis * f.normal;
    hull.facets.push_back({normal, f.offset + normal.dot(center)});
  }
  for (Eigen::Index c = 0; c < complement.cols(); ++c) {
    Vector normal = complement.col(c);
    const Scalar offset = normal.dot(center);
    hull.facets.push_back({normal, offset});
    hull.facets.push_back({-normal, -offset});
  }
  return hull;
}

}  // namespace crcc
