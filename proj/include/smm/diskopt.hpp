#pragma once

#include "smm/model.hpp"
#include "smm/receptive_field.hpp"

namespace smm {

// D = H_c(center) ∩ V_r(center), parameterized by tangent coordinates y.
struct Disk {
  Point center;
  double radius = 0.0;
  Eigen::MatrixXd basis;  // n x (n-1), orthonormal, orthogonal to c

  Point point_at(const Eigen::VectorXd& y) const { return center + basis * y; }
};

Disk make_disk(const LpProblem& p, const Point& center, double radius);

enum class ArgmaxMethod { Exact, Field };

struct DiskArgmaxResult {
  Point v;
  double bias = 0.0;  // recessive bias at v
  Eigen::VectorXd y;
  ArgmaxMethod method = ArgmaxMethod::Exact;
};

// Default optimality tolerance 1e-9 * (1 + |bias at the center|).
double default_tol_opt(const LpProblem& p, const Disk& d);

/// argmax of the recessive bias over the disk.
///
/// On the disk the bias is the minimum of |I| affine functions of y, so the
/// problem is a concave piecewise-linear maximization over a ball. n = 2 is
/// solved by enumerating breakpoints on the interval. Otherwise the optimal
/// level is bracketed and bisected; each probe finds the minimum-norm point
/// of the level set with a least-distance solve. Among near-optimal points
/// the minimum-norm y is returned. tol_opt <= 0 selects the default.
DiskArgmaxResult disk_argmax_exact(const LpProblem& p, const Disk& d, double tol_opt = 0.0);

/// Same subproblem restricted to disk points whose recessive projection is
/// feasible. Equivalent to maximizing <c, x> over M intersected with the
/// cylinder of radius r around the center; used to certify optimality.
///
/// Constraints active at the center within the tolerance band are treated as
/// exactly active, and bias is the level reached under that convention, so
/// v + bias c never moves outward across them. It differs from the recessive
/// bias at v by at most the band width.
DiskArgmaxResult disk_argmax_feasible(const LpProblem& p, const Disk& d, const Tolerances& tol = {},
                                      double tol_opt = 0.0);

// Best field point by recessive bias; ties go to the point closest to the
// center, then to the lowest index.
DiskArgmaxResult disk_argmax_field(const LpProblem& p, const ReceptiveField& field);

}  // namespace smm
