#pragma once

#include <optional>

#include "smm/model.hpp"

namespace smm {

// Intersection of the line z + t c with H_i, and the signed distance to it
// measured along c (positive when the hyperplane lies in the +c direction).
struct HyperplaneProjection {
  Point point;
  double bias = 0.0;
};

// std::nullopt is the point at infinity: <a_i, c> = 0.
using ProjectionResult = std::optional<HyperplaneProjection>;

ProjectionResult objective_projection(const LpProblem& p, Index i, const Point& z);

// First hit of the line through z along +c with the boundary of the
// recessive polytope. bias is the line parameter t with point = z + t c,
// i.e. the per-hyperplane bias divided by ||c||.
struct RecessiveProjection {
  Point point;
  double bias = 0.0;
  Index witness = 0;
};

/// Throws LpError(EmptyRecessiveSet) when I is empty. Ties in the argmin go
/// to the smallest constraint index.
RecessiveProjection recessive_projection(const LpProblem& p, const Point& z);

// Same bias as recessive_projection without materializing the point.
double recessive_bias(const LpProblem& p, const Point& z);

/// Orthonormal basis (n x (n-1), one vector per column) of the hyperplane
/// orthogonal to c. Built from a Householder reflection that maps e_k onto
/// -sign(c_k) c/||c||, k = argmax |c_k|; the columns other than k form the
/// basis. Deterministic and continuous in c away from changes of k.
Eigen::MatrixXd objective_hyperplane_basis(const Vector& c);

// Orthogonal projection of x onto H_c(z_ref) = { y | <c, y - z_ref> = 0 }.
Point project_onto_objective_hyperplane(const Point& z_ref, const Point& x, const Vector& c);

/// Moves a feasible z along +c to the recessive boundary. The result is
/// feasible (non-recessive constraints only loosen along +c) and lies on the
/// witness hyperplane.
Point lift_to_surface(const LpProblem& p, const Point& z, const Tolerances& tol = {});

}  // namespace smm
