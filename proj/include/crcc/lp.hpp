#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

namespace crcc {

enum class LpStatus { optimal, unbounded, infeasible };

template <typename Scalar>
struct LpSolution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  LpStatus status = LpStatus::infeasible;
  Vector x;           // optimal point, or the last feasible basis when unbounded
  Scalar value = 0;   // objective at x
  Vector ray;         // improving recession direction when unbounded
};

/// Tolerances of the tableau simplex; defaults suit double precision and
/// well-scaled data (entries of order one).
template <typename Scalar>
constexpr Scalar default_tolerance(double value) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return Scalar(value);
  } else {
    return Scalar(0);
  }
}

/// Exact scalar types get zero tolerances.
template <typename Scalar>
struct LpTolerances {
  Scalar pivot = default_tolerance<Scalar>(1e-11);
  Scalar cost = default_tolerance<Scalar>(1e-11);
  Scalar feasibility = default_tolerance<Scalar>(1e-9);
};

namespace detail {

// Dense two-phase tableau simplex with Bland's rule. Solves
// min c'x s.t. A x = b, x >= 0.
template <typename Scalar>
class Tableau {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Tableau(const Matrix& a, const Vector& b, const LpTolerances<Scalar>& tol) : tol_(tol) {
    m_ = a.rows();
    n_ = a.cols();
    // Rows with a ready-made +unit column and b >= 0 start with that column
    // basic; every other row gets an artificial.
    std::vector<Eigen::Index> unit_basis(static_cast<std::size_t>(m_), -1);
    for (Eigen::Index j = 0; j < n_; ++j) {
      Eigen::Index hit = -1;
      bool unit = true;
      for (Eigen::Index i = 0; i < m_ && unit; ++i) {
        if (a(i, j) == Scalar(0)) continue;
        if (a(i, j) == Scalar(1) && hit < 0) {
          hit = i;
        } else {
          unit = false;
        }
      }
      if (unit && hit >= 0 && b[hit] >= Scalar(0) && unit_basis[static_cast<std::size_t>(hit)] < 0) {
        unit_basis[static_cast<std::size_t>(hit)] = j;
      }
    }
    num_artificial_ = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (unit_basis[static_cast<std::size_t>(i)] < 0) ++num_artificial_;
    }
    t_ = Matrix::Zero(m_, n_ + num_artificial_ + 1);
    basis_.assign(static_cast<std::size_t>(m_), -1);
    Eigen::Index next_art = n_;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar sign = (unit_basis[static_cast<std::size_t>(i)] < 0 && b[i] < Scalar(0)) ? Scalar(-1) : Scalar(1);
      t_.row(i).head(n_) = sign * a.row(i);
      t_(i, rhs_col()) = sign * b[i];
      if (unit_basis[static_cast<std::size_t>(i)] >= 0) {
        basis_[static_cast<std::size_t>(i)] = unit_basis[static_cast<std::size_t>(i)];
      } else {
        t_(i, next_art) = Scalar(1);
        basis_[static_cast<std::size_t>(i)] = next_art++;
      }
    }
  }

  // Phase 1; returns false when infeasible.
  bool find_feasible_basis() {
    if (num_artificial_ == 0) return true;
    Vector cost = Vector::Zero(n_ + num_artificial_);
    cost.tail(num_artificial_).setOnes();
    Eigen::Index entering_ignored = -1;
    run(cost, n_ + num_artificial_, entering_ignored);
    Scalar infeasibility = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (is_artificial(basis_[static_cast<std::size_t>(i)])) infeasibility += t_(i, rhs_col());
    }
    Scalar scale = Scalar(1);
    using std::abs;
    for (Eigen::Index i = 0; i < m_; ++i) scale = std::max(scale, Scalar(abs(t_(i, rhs_col()))));
    if (infeasibility > tol_.feasibility * scale) return false;
    // Pivot remaining (zero-level) artificials out where possible.
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[static_cast<std::size_t>(i)])) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (abs(t_(i, j)) > tol_.pivot) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  // Phase 2 on the original columns. Returns false if unbounded; then
  // `entering` holds the unbounded column.
  bool optimize(const Vector& c, Eigen::Index& entering) {
    Vector cost = Vector::Zero(n_ + num_artificial_);
    cost.head(n_) = c;
    return run(cost, n_, entering);
  }

  Vector primal() const {
    Vector x = Vector::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const auto j = basis_[static_cast<std::size_t>(i)];
      if (j < n_) x[j] = t_(i, rhs_col());
    }
    return x;
  }

  Vector ray(Eigen::Index entering) const {
    Vector d = Vector::Zero(n_);
    d[entering] = Scalar(1);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const auto j = basis_[static_cast<std::size_t>(i)];
      if (j < n_) d[j] = -t_(i, entering);
    }
    return d;
  }

 private:
  Eigen::Index rhs_col() const { return n_ + num_artificial_; }
  bool is_artificial(Eigen::Index j) const { return j >= n_; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, c);
      if (f != Scalar(0)) {
        t_.row(i) -= f * t_.row(r);
        t_(i, c) = Scalar(0);
      }
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Bland's rule: lowest-index improving column, ties in the ratio test
  // broken by lowest basic index.
  bool run(const Vector& cost, Eigen::Index allowed_cols, Eigen::Index& unbounded_col) {
    std::vector<char> is_basic(static_cast<std::size_t>(n_ + num_artificial_), 0);
    const Eigen::Index max_iter = 50 * (m_ + n_ + num_artificial_) + 1000;
    for (Eigen::Index iter = 0; iter < max_iter; ++iter) {
      std::fill(is_basic.begin(), is_basic.end(), 0);
      for (auto j : basis_) is_basic[static_cast<std::size_t>(j)] = 1;
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < allowed_cols; ++j) {
        if (is_basic[static_cast<std::size_t>(j)]) continue;
        Scalar reduced = cost[j];
        for (Eigen::Index i = 0; i < m_; ++i) reduced -= cost[basis_[static_cast<std::size_t>(i)]] * t_(i, j);
        if (reduced < -tol_.cost) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;
      Eigen::Index leave = -1;
      Scalar best = Scalar(0);
      for (Eigen::Index i = 0; i < m_; ++i) {
        const Scalar a = t_(i, entering);
        if (a <= tol_.pivot) continue;
        const Scalar ratio = std::max(t_(i, rhs_col()), Scalar(0)) / a;
        if (leave < 0 || ratio < best - tol_.pivot) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + tol_.pivot &&
                   basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) {
        unbounded_col = entering;
        return false;
      }
      pivot(leave, entering);
    }
    return true;  // iteration cap: accept the current basis
  }

  LpTolerances<Scalar> tol_;
  Eigen::Index m_ = 0, n_ = 0, num_artificial_ = 0;
  Matrix t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

/// min c'x  s.t.  A x = b, x >= 0.
template <typename Scalar>
LpSolution<Scalar> solve_standard_form(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
                                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& c,
                                       const LpTolerances<Scalar>& tol = {}) {
  LpSolution<Scalar> out;
  detail::Tableau<Scalar> tab(a, b, tol);
  if (!tab.find_feasible_basis()) {
    out.status = LpStatus::infeasible;
    return out;
  }
  Eigen::Index entering = -1;
  const bool bounded = tab.optimize(c, entering);
  out.x = tab.primal();
  out.value = c.dot(out.x);
  if (bounded) {
    out.status = LpStatus::optimal;
  } else {
    out.status = LpStatus::unbounded;
    out.ray = tab.ray(entering);
  }
  return out;
}

/// max c'x  s.t.  A x <= b, x free.
template <typename Scalar>
LpSolution<Scalar> maximize(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                            const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
                            const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& c,
                            const LpTolerances<Scalar>& tol = {}) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index m = a.rows();
  const Eigen::Index d = a.cols();
  // x = x+ - x-, plus one slack per row.
  Matrix std_a = Matrix::Zero(m, 2 * d + m);
  std_a.leftCols(d) = a;
  std_a.middleCols(d, d) = -a;
  std_a.rightCols(m).setIdentity();
  Vector std_c = Vector::Zero(2 * d + m);
  std_c.head(d) = -c;
  std_c.segment(d, d) = c;

  auto raw = solve_standard_form<Scalar>(std_a, b, std_c, tol);
  LpSolution<Scalar> out;
  out.status = raw.status;
  if (raw.status == LpStatus::infeasible) return out;
  out.x = raw.x.head(d) - raw.x.segment(d, d);
  out.value = c.dot(out.x);
  if (raw.status == LpStatus::unbounded) out.ray = raw.ray.head(d) - raw.ray.segment(d, d);
  return out;
}

/// Some point of {x : A x <= b}, or nothing when empty.
template <typename Scalar>
bool find_feasible_point(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
                         Eigen::Matrix<Scalar, Eigen::Dynamic, 1>* point = nullptr,
                         const LpTolerances<Scalar>& tol = {}) {
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> zero = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(a.cols());
  auto sol = maximize<Scalar>(a, b, zero, tol);
  if (sol.status == LpStatus::infeasible) return false;
  if (point) *point = sol.x;
  return true;
}

}  // namespace crcc
