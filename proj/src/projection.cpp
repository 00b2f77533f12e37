#include "smm/projection.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace smm {

namespace {

void check_dim(const LpProblem& p, const Point& z) {
  if (z.size() != static_cast<Eigen::Index>(p.n())) {
    throw LpError(ErrorKind::DimensionMismatch, "point has the wrong dimension");
  }
}

// Line parameter t with <a_i, z + t c> = b_i. Requires <a_i, c> != 0.
double line_parameter(const LpProblem& p, Index i, const Point& z) {
  return -p.residual(i, z) / p.c_dot(i);
}

}  // namespace

ProjectionResult objective_projection(const LpProblem& p, Index i, const Point& z) {
  if (i >= p.m()) throw LpError(ErrorKind::InvalidArgument, "constraint index out of range");
  check_dim(p, z);
  if (p.c_dot(i) == 0.0) return std::nullopt;
  const double t = line_parameter(p, i, z);
  return HyperplaneProjection{z + t * p.c(), t * p.c_norm()};
}

double recessive_bias(const LpProblem& p, const Point& z) {
  if (p.recessive().empty()) throw LpError(ErrorKind::EmptyRecessiveSet, "no recessive half-space");
  check_dim(p, z);
  double best = std::numeric_limits<double>::infinity();
  for (Index i : p.recessive()) best = std::min(best, line_parameter(p, i, z));
  return best;
}

RecessiveProjection recessive_projection(const LpProblem& p, const Point& z) {
  if (p.recessive().empty()) throw LpError(ErrorKind::EmptyRecessiveSet, "no recessive half-space");
  check_dim(p, z);
  Index witness = p.recessive().front();
  double best = line_parameter(p, witness, z);
  for (Index i : p.recessive()) {
    const double t = line_parameter(p, i, z);
    if (t < best) {
      best = t;
      witness = i;
    }
  }
  RecessiveProjection out{z + best * p.c(), best, witness};
#ifndef NDEBUG
  const double scale = 1.0 + std::abs(best);
  const double via_point = p.c().dot(out.point - z) / (p.c_norm() * p.c_norm());
  assert(std::abs(via_point - best) <= 1e-9 * scale);
  assert(std::abs(best * p.c_norm() - objective_projection(p, witness, z)->bias) <= 1e-9 * scale * p.c_norm());
#endif
  return out;
}

Eigen::MatrixXd objective_hyperplane_basis(const Vector& c) {
  const double norm = c.norm();
  if (!(norm > 0.0)) throw LpError(ErrorKind::ZeroObjective, "zero objective gradient");
  const Eigen::Index n = c.size();
  Eigen::Index k = 0;
  c.cwiseAbs().maxCoeff(&k);

  // H = I - 2 v v^T / (v^T v) with v = e_k + sign(c_k) e_c sends e_k to
  // -sign(c_k) e_c; |v_k| >= 1 so there is no cancellation.
  const Eigen::VectorXd e_c = c / norm;
  Eigen::VectorXd v = (e_c[k] >= 0.0 ? 1.0 : -1.0) * e_c;
  v[k] += 1.0;
  const double vv = v.squaredNorm();

  Eigen::MatrixXd Q(n, n - 1);
  for (Eigen::Index j = 0, col = 0; j < n; ++j) {
    if (j == k) continue;
    Eigen::VectorXd h = -(2.0 * v[j] / vv) * v;
    h[j] += 1.0;
    Q.col(col++) = h;
  }
  return Q;
}

Point project_onto_objective_hyperplane(const Point& z_ref, const Point& x, const Vector& c) {
  const double cc = c.squaredNorm();
  if (!(cc > 0.0)) throw LpError(ErrorKind::ZeroObjective, "zero objective gradient");
  return x - (c.dot(x - z_ref) / cc) * c;
}

Point lift_to_surface(const LpProblem& p, const Point& z, const Tolerances& tol) {
  if (!is_feasible(p, z, tol)) throw LpError(ErrorKind::InfeasibleStart, "start point is not feasible");
  RecessiveProjection proj = recessive_projection(p, z);
  assert(is_feasible(p, proj.point, tol));
  assert(std::abs(p.residual(proj.witness, proj.point)) <= tol.active_band(p.b()[static_cast<Eigen::Index>(proj.witness)]));
  return proj.point;
}

}  // namespace smm
