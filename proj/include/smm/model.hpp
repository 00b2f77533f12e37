#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "smm/error.hpp"

namespace smm {

using Index = std::size_t;
using IndexSet = std::vector<Index>;  // always sorted ascending

// Points are locations, Vectors are directions. Both are plain coordinate
// tuples; the alias only documents intent.
using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;

struct Tolerances {
  double active = 1e-9;  // |<a_i,x> - b_i| <= active * (1 + |b_i|)
  double feas = 1e-9;    // <a_i,x> <= b_i + feas

  void validate() const;

  double active_band(double b) const noexcept;
};

/// Maximize <c, x> subject to A x <= b.
///
/// Immutable once constructed. The constructor validates the data (nonzero
/// rows, nonzero c, m > 1, consistent sizes) and caches the recessive index
/// set I = { i | <a_i, c> > 0 }.
class LpProblem {
 public:
  LpProblem(Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c,
            std::optional<Point> interior_point = std::nullopt);

  Index n() const noexcept { return static_cast<Index>(A_.cols()); }
  Index m() const noexcept { return static_cast<Index>(A_.rows()); }

  const Eigen::MatrixXd& A() const noexcept { return A_; }
  const Eigen::VectorXd& b() const noexcept { return b_; }
  const Eigen::VectorXd& c() const noexcept { return c_; }

  double c_norm() const noexcept { return c_norm_; }
  double c_dot(Index i) const noexcept { return c_dots_[static_cast<Eigen::Index>(i)]; }

  const IndexSet& recessive() const noexcept { return recessive_; }
  bool is_recessive(Index i) const noexcept { return c_dot(i) > 0.0; }

  // No recessive half-space means the objective is unbounded on the
  // constraint set (or the set is empty).
  bool objective_unbounded() const noexcept { return recessive_.empty(); }

  const std::optional<Point>& interior_point() const noexcept { return interior_; }

  double objective(const Point& x) const { return c_.dot(x); }

  // <a_i, x> - b_i
  double residual(Index i, const Point& x) const {
    return A_.row(static_cast<Eigen::Index>(i)).dot(x) - b_[static_cast<Eigen::Index>(i)];
  }

  bool operator==(const LpProblem& other) const;

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  Eigen::VectorXd c_;
  Eigen::VectorXd c_dots_;
  double c_norm_ = 0.0;
  IndexSet recessive_;
  std::optional<Point> interior_;
};

// { i | <a_i, c> > 0 }, exact comparison on the computed dot product.
IndexSet recessive_indices(const Eigen::MatrixXd& A, const Vector& c);
IndexSet recessive_indices(const LpProblem& p);

bool is_feasible(const LpProblem& p, const Point& x, const Tolerances& tol = {});

IndexSet active_set(const LpProblem& p, const Point& x, const Tolerances& tol = {});

LpProblem parse_problem(std::string_view text);

// Box 0 <= x_j <= 10 plus m_cuts random unit-norm half-spaces that keep the
// box center strictly feasible. The center is stored as the interior point.
LpProblem gen_random(Index n, Index m_cuts, std::uint64_t seed);

}  // namespace smm
