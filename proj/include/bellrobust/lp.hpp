#pragma once

// Dense two-phase primal simplex for
//
//   minimize    c^T x
//   subject to  A x  = b
//               G x >= h
//               x   >= 0
//
// Solutions carry the dual multipliers (y for A, z >= 0 for G) of
//
//   maximize    b^T y + h^T z
//   subject to  A^T y + G^T z <= c,  z >= 0
//
// Pricing is Dantzig's rule; after a streak of degenerate pivots the solver
// falls back to Bland's rule until the objective moves again. The final
// basis is refactored from the original data so the reported primal/dual
// pair does not carry the tableau's accumulated rounding.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bellrobust/errors.hpp"

namespace bellrobust {

template <typename Scalar = double>
struct LinearProgram {
  using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  VectorType objective;
  MatrixType eq_lhs;
  VectorType eq_rhs;
  MatrixType ineq_lhs;
  VectorType ineq_rhs;

  Eigen::Index num_variables() const { return objective.size(); }
};

enum class Status { Optimal, Infeasible, Unbounded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

template <typename Scalar = double>
struct Certificate {
  Scalar primal_residual = 0;     // worst violation of A x = b, G x >= h, x >= 0
  Scalar dual_infeasibility = 0;  // worst violation of A^T y + G^T z <= c, z >= 0
  Scalar duality_gap = 0;         // |c^T x - b^T y - h^T z|
};

template <typename Scalar = double>
struct Solution {
  using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Status status = Status::Infeasible;
  Scalar objective_value = 0;
  VectorType primal;
  VectorType dual_eq;
  VectorType dual_ineq;
  /// Improving direction when Unbounded: x + t*ray stays feasible, c^T ray < 0.
  VectorType ray;
  /// Optimal value of the phase-1 problem (sum of artificials).
  Scalar infeasibility = 0;
  Certificate<Scalar> certificate;
  std::size_t iterations = 0;
};

template <typename Scalar = double>
struct SolverOptions {
  Scalar tol = Scalar(1e-9);
  Scalar pivot_tol = Scalar(1e-10);
  /// Zero selects 50 * (rows + columns).
  std::size_t max_iterations = 0;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_streak = 50;
  /// Stop after phase 1.
  bool feasibility_only = false;
};

namespace detail {

template <typename Scalar>
class DenseSimplex {
 public:
  using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Tableau =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  DenseSimplex(const LinearProgram<Scalar>& lp,
               const SolverOptions<Scalar>& opt)
      : lp_(lp), opt_(opt) {
    check_shapes();
    n_ = lp.num_variables();
    m_eq_ = lp.eq_rhs.size();
    m_in_ = lp.ineq_rhs.size();
    m_ = m_eq_ + m_in_;
    n_struct_ = n_ + m_in_;
    art_ = n_struct_;
    cols_ = n_struct_ + m_;
    rhs_ = cols_;
    cost_ = m_;
    phase1_ = m_ + 1;
    max_iter_ = opt.max_iterations
                    ? opt.max_iterations
                    : 50 * static_cast<std::size_t>(m_ + n_struct_ + 1);
    build_standard_form();
  }

  Solution<Scalar> run() {
    Solution<Scalar> sol;
    init_tableau();

    // Phase 1: drive the artificials to zero.
    if (!iterate(phase1_)) {
      throw ResourceError("phase 1 unbounded; the LP data is inconsistent");
    }
    const Scalar w = -t_(phase1_, rhs_);
    sol.infeasibility = std::max(w, Scalar(0));
    const Scalar scale =
        std::max(Scalar(1), b_std_.size() ? b_std_.cwiseAbs().maxCoeff()
                                          : Scalar(0));
    if (w > opt_.tol * scale) {
      sol.status = Status::Infeasible;
      sol.iterations = iterations_;
      return sol;
    }
    evict_artificials();

    if (opt_.feasibility_only) {
      sol.status = Status::Optimal;
      sol.primal = current_primal();
      sol.objective_value = lp_.objective.dot(sol.primal);
      sol.iterations = iterations_;
      return sol;
    }

    // Phase 2, then refactor and resume until the refactored basis is
    // optimal to tolerance.
    for (int round = 0;; ++round) {
      if (!iterate(cost_)) {
        sol.status = Status::Unbounded;
        sol.ray = unbounded_ray();
        sol.primal = current_primal();
        sol.objective_value =
            -std::numeric_limits<Scalar>::infinity();
        sol.iterations = iterations_;
        return sol;
      }
      refactor();
      if (round >= 3 || optimal_after_refactor()) break;
    }

    sol.status = Status::Optimal;
    sol.primal = current_primal();
    sol.objective_value = lp_.objective.dot(sol.primal);
    extract_duals(sol);
    sol.certificate = certify(sol);
    sol.iterations = iterations_;
    return sol;
  }

 private:
  void check_shapes() const {
    const Eigen::Index n = lp_.objective.size();
    auto fail = [](const std::string& what) { throw ShapeError(what); };
    if (lp_.eq_lhs.rows() != lp_.eq_rhs.size())
      fail("equality rows do not match rhs length");
    if (lp_.eq_lhs.rows() > 0 && lp_.eq_lhs.cols() != n)
      fail("equality matrix columns do not match objective length");
    if (lp_.ineq_lhs.rows() != lp_.ineq_rhs.size())
      fail("inequality rows do not match rhs length");
    if (lp_.ineq_lhs.rows() > 0 && lp_.ineq_lhs.cols() != n)
      fail("inequality matrix columns do not match objective length");
    if (!lp_.objective.allFinite() || !lp_.eq_lhs.allFinite() ||
        !lp_.eq_rhs.allFinite() || !lp_.ineq_lhs.allFinite() ||
        !lp_.ineq_rhs.allFinite())
      fail("LP data contains non-finite entries");
  }

  // Rows of [A; G] with surplus columns for G, each row flipped so that the
  // right-hand side is nonnegative.
  void build_standard_form() {
    a_std_ = MatrixType::Zero(m_, n_struct_);
    b_std_ = VectorType::Zero(m_);
    sign_.assign(static_cast<std::size_t>(m_), Scalar(1));
    if (m_eq_ > 0) {
      a_std_.topLeftCorner(m_eq_, n_) = lp_.eq_lhs;
      b_std_.head(m_eq_) = lp_.eq_rhs;
    }
    if (m_in_ > 0) {
      a_std_.block(m_eq_, 0, m_in_, n_) = lp_.ineq_lhs;
      a_std_.block(m_eq_, n_, m_in_, m_in_) =
          -MatrixType::Identity(m_in_, m_in_);
      b_std_.tail(m_in_) = lp_.ineq_rhs;
    }
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (b_std_(i) < 0) {
        a_std_.row(i) *= Scalar(-1);
        b_std_(i) = -b_std_(i);
        sign_[static_cast<std::size_t>(i)] = Scalar(-1);
      }
    }
    c_std_ = VectorType::Zero(cols_);
    c_std_.head(n_) = lp_.objective;
  }

  void init_tableau() {
    t_ = Tableau::Zero(m_ + 2, cols_ + 1);
    t_.topLeftCorner(m_, n_struct_) = a_std_;
    t_.block(0, art_, m_, m_).setIdentity();
    t_.col(rhs_).head(m_) = b_std_;
    t_.row(cost_).head(cols_) = c_std_.transpose();
    for (Eigen::Index i = 0; i < m_; ++i) {
      t_.row(phase1_).head(n_struct_) -= t_.row(i).head(n_struct_);
      t_(phase1_, rhs_) -= t_(i, rhs_);
    }
    basis_.resize(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i)
      basis_[static_cast<std::size_t>(i)] = art_ + i;
    redundant_.assign(static_cast<std::size_t>(m_), false);
  }

  void pivot(Eigen::Index r, Eigen::Index s) {
    const Scalar inv = Scalar(1) / t_(r, s);
    t_.row(r) *= inv;
    t_(r, s) = Scalar(1);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, s);
      if (f == Scalar(0)) continue;
      t_.row(i) -= f * t_.row(r);
      t_(i, s) = Scalar(0);
    }
    basis_[static_cast<std::size_t>(r)] = s;
  }

  Eigen::Index choose_entering(Eigen::Index cost_row, bool bland) const {
    Eigen::Index best = -1;
    Scalar best_value = -opt_.tol;
    for (Eigen::Index j = 0; j < n_struct_; ++j) {
      const Scalar d = t_(cost_row, j);
      if (d < best_value) {
        best = j;
        if (bland) break;
        best_value = d;
      }
    }
    return best;
  }

  Eigen::Index choose_leaving(Eigen::Index s, bool bland) const {
    Eigen::Index best = -1;
    Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar a = t_(i, s);
      if (a <= opt_.pivot_tol || redundant_[static_cast<std::size_t>(i)])
        continue;
      const Scalar ratio = std::max(t_(i, rhs_), Scalar(0)) / a;
      if (best < 0 || ratio < best_ratio - ratio_slack(best_ratio)) {
        best = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + ratio_slack(best_ratio)) {
        const bool better =
            bland ? basis_[static_cast<std::size_t>(i)] <
                        basis_[static_cast<std::size_t>(best)]
                  : a > t_(best, s);
        if (better) {
          best = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
    }
    return best;
  }

  static Scalar ratio_slack(Scalar ratio) {
    return Scalar(1e-12) * (Scalar(1) + std::abs(ratio));
  }

  // Returns false when the objective of `cost_row` is unbounded below; the
  // offending column is left in `unbounded_col_`.
  bool iterate(Eigen::Index cost_row) {
    std::size_t streak = 0;
    bool bland = false;
    for (;;) {
      const Eigen::Index s = choose_entering(cost_row, bland);
      if (s < 0) return true;
      const Eigen::Index r = choose_leaving(s, bland);
      if (r < 0) {
        unbounded_col_ = s;
        return false;
      }
      if (++iterations_ > max_iter_)
        throw ResourceError("simplex iteration limit of " +
                            std::to_string(max_iter_) + " exceeded");
      const bool degenerate = t_(r, rhs_) <= opt_.tol;
      pivot(r, s);
      if (degenerate) {
        if (++streak >= opt_.degenerate_streak) bland = true;
      } else {
        streak = 0;
        bland = false;
      }
    }
  }

  // After phase 1, pivot every zero-level artificial out of the basis. Rows
  // where that is impossible are linearly dependent on the others; their
  // artificial stays basic at zero and the row is excluded from ratio tests.
  void evict_artificials() {
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < art_) continue;
      t_(r, rhs_) = Scalar(0);
      Eigen::Index j_best = -1;
      Scalar best = Scalar(1e-9);
      for (Eigen::Index j = 0; j < n_struct_; ++j) {
        const Scalar a = std::abs(t_(r, j));
        if (a > best) {
          best = a;
          j_best = j;
        }
      }
      if (j_best >= 0) {
        pivot(r, j_best);
      } else {
        t_.row(r).head(n_struct_).setZero();
        redundant_[static_cast<std::size_t>(r)] = true;
      }
    }
  }

  MatrixType full_column_block() const {
    MatrixType full(m_, cols_);
    full.leftCols(n_struct_) = a_std_;
    full.rightCols(m_) = MatrixType::Identity(m_, m_);
    return full;
  }

  // Rebuild the tableau as B^{-1} [A | I] from the original data.
  void refactor() {
    const MatrixType full = full_column_block();
    MatrixType basis(m_, m_);
    VectorType c_basis(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
      basis.col(i) = full.col(j);
      c_basis(i) = c_std_(j);
    }
    const Eigen::PartialPivLU<MatrixType> lu(basis);
    t_.topLeftCorner(m_, cols_) = lu.solve(full);
    t_.col(rhs_).head(m_) = lu.solve(b_std_);
    y_std_ = lu.transpose().solve(c_basis);
    t_.row(cost_).head(cols_) =
        (c_std_ - full.transpose() * y_std_).transpose();
    t_(cost_, rhs_) = -c_basis.dot(t_.col(rhs_).head(m_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      // Basic columns are exact unit vectors by construction.
      const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
      t_.col(j).head(m_).setZero();
      t_(i, j) = Scalar(1);
      t_(cost_, j) = Scalar(0);
      if (redundant_[static_cast<std::size_t>(i)]) {
        t_.row(i).head(n_struct_).setZero();
        t_(i, rhs_) = Scalar(0);
      }
    }
  }

  bool optimal_after_refactor() const {
    return choose_entering(cost_, false) < 0;
  }

  VectorType current_primal() const {
    VectorType x = VectorType::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
      if (j < n_) x(j) = std::max(t_(i, rhs_), Scalar(0));
    }
    return x;
  }

  VectorType unbounded_ray() const {
    VectorType d = VectorType::Zero(n_);
    if (unbounded_col_ < n_) d(unbounded_col_) = Scalar(1);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
      if (j < n_) d(j) = -t_(i, unbounded_col_);
    }
    return d;
  }

  void extract_duals(Solution<Scalar>& sol) const {
    sol.dual_eq = VectorType::Zero(m_eq_);
    sol.dual_ineq = VectorType::Zero(m_in_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar y = sign_[static_cast<std::size_t>(i)] * y_std_(i);
      if (i < m_eq_)
        sol.dual_eq(i) = y;
      else
        sol.dual_ineq(i - m_eq_) = y;
    }
  }

  Certificate<Scalar> certify(const Solution<Scalar>& sol) const {
    Certificate<Scalar> c;
    const VectorType& x = sol.primal;
    Scalar primal = x.size() ? std::max(Scalar(0), -x.minCoeff()) : Scalar(0);
    VectorType reduced = lp_.objective;
    Scalar dual_obj = 0;
    if (m_eq_ > 0) {
      primal = std::max(primal,
                        (lp_.eq_lhs * x - lp_.eq_rhs).cwiseAbs().maxCoeff());
      reduced -= lp_.eq_lhs.transpose() * sol.dual_eq;
      dual_obj += lp_.eq_rhs.dot(sol.dual_eq);
    }
    Scalar dual = 0;
    if (m_in_ > 0) {
      primal = std::max(primal,
                        (lp_.ineq_rhs - lp_.ineq_lhs * x).maxCoeff());
      reduced -= lp_.ineq_lhs.transpose() * sol.dual_ineq;
      dual_obj += lp_.ineq_rhs.dot(sol.dual_ineq);
      dual = std::max(dual, -sol.dual_ineq.minCoeff());
    }
    if (reduced.size()) dual = std::max(dual, -reduced.minCoeff());
    c.primal_residual = std::max(primal, Scalar(0));
    c.dual_infeasibility = std::max(dual, Scalar(0));
    c.duality_gap = std::abs(sol.objective_value - dual_obj);
    return c;
  }

  const LinearProgram<Scalar>& lp_;
  SolverOptions<Scalar> opt_;
  Eigen::Index n_ = 0, m_eq_ = 0, m_in_ = 0, m_ = 0;
  Eigen::Index n_struct_ = 0, art_ = 0, cols_ = 0, rhs_ = 0;
  Eigen::Index cost_ = 0, phase1_ = 0;
  Eigen::Index unbounded_col_ = -1;
  std::size_t max_iter_ = 0;
  std::size_t iterations_ = 0;

  MatrixType a_std_;
  VectorType b_std_;
  VectorType c_std_;
  VectorType y_std_;
  std::vector<Scalar> sign_;
  Tableau t_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> redundant_;
};

}  // namespace detail

template <typename Scalar>
Solution<Scalar> solve(const LinearProgram<Scalar>& lp,
                       const SolverOptions<Scalar>& options) {
  if (!(options.tol > 0)) throw InputError("LP tolerance must be positive");
  return detail::DenseSimplex<Scalar>(lp, options).run();
}

template <typename Scalar>
Solution<Scalar> solve(const LinearProgram<Scalar>& lp,
                       Scalar tol = Scalar(1e-9)) {
  SolverOptions<Scalar> options;
  options.tol = tol;
  return solve(lp, options);
}

/// Phase 1 only: whether { x >= 0 : A x = b, G x >= h } is nonempty.
template <typename Scalar>
bool feasible(const LinearProgram<Scalar>& lp, Scalar tol = Scalar(1e-9)) {
  SolverOptions<Scalar> options;
  options.tol = tol;
  options.feasibility_only = true;
  return solve(lp, options).status == Status::Optimal;
}

}  // namespace bellrobust
