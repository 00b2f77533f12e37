#pragma once

// Shared fixtures and independent reference computations for the tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "smm/io.hpp"
#include "smm/model.hpp"
#include "smm/projection.hpp"

namespace smm::testing {

inline std::string fixture(const std::string& name) { return std::string(SMM_FIXTURE_DIR) + "/" + name; }

inline LpProblem pentagon() { return read_problem_file(fixture("pentagon.json")); }
inline LpProblem slab3d() { return read_problem_file(fixture("slab3d.json")); }

inline Point pt(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) p[k++] = x;
  return p;
}

// 100 seeded instances with n in 2..5 and m_cuts in 0..10.
inline LpProblem corpus_instance(int k) {
  const Index n = 2 + static_cast<Index>(k % 4);
  const Index cuts = static_cast<Index>((k * 7) % 11);
  return gen_random(n, cuts, 1000 + static_cast<std::uint64_t>(k));
}

inline Point gaussian_point(std::mt19937_64& rng, Index n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Point z(static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = g(rng);
  return z;
}

// Root of t -> <a_i, z + t c> - b_i by plain bisection on an expanding
// bracket. Valid for <a_i, c> != 0; independent of the closed form.
inline double bisect_line_parameter(const LpProblem& p, Index i, const Point& z) {
  auto g = [&](double t) { return p.residual(i, z + t * p.c()); };
  double lo = -1.0, hi = 1.0;
  while (g(lo) * g(hi) > 0.0) {
    lo *= 2.0;
    hi *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((g(lo) <= 0.0) == (g(mid) <= 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Counts sign changes of t -> <a_i, z + t c> - b_i over a fine sweep.
inline int sign_changes_along_c(const LpProblem& p, Index i, const Point& z, double span, int steps) {
  int changes = 0;
  double prev = p.residual(i, z - span * p.c());
  for (int s = 1; s <= steps; ++s) {
    const double t = -span + 2.0 * span * s / steps;
    const double cur = p.residual(i, z + t * p.c());
    if ((prev < 0.0) != (cur < 0.0)) ++changes;
    prev = cur;
  }
  return changes;
}

// A random feasible point: a random convex combination of the interior
// point and a random point, shrunk toward the interior until feasible.
inline Point random_feasible_point(const LpProblem& p, std::mt19937_64& rng) {
  const Point center = *p.interior_point();
  Point z = center + gaussian_point(rng, p.n(), 4.0);
  for (int k = 0; k < 60 && !is_feasible(p, z); ++k) z = center + 0.7 * (z - center);
  return is_feasible(p, z) ? z : center;
}

// Largest slope of the recessive bias in tangent coordinates.
inline double max_bias_slope(const LpProblem& p) {
  double out = 0.0;
  const Eigen::MatrixXd Q = objective_hyperplane_basis(p.c());
  for (Index i : p.recessive()) {
    const Eigen::VectorXd a = p.A().row(static_cast<Eigen::Index>(i)).transpose();
    out = std::max(out, (Q.transpose() * a).norm() / p.c_dot(i));
  }
  return out;
}

// Rounding scale of the bias of x against H_i: |b_i| + ||a_i|| ||x||, divided
// by the cosine of the angle between a_i and c.
inline double bias_condition(const LpProblem& p, Index i, const Point& x) {
  const auto row = static_cast<Eigen::Index>(i);
  const double a_norm = p.A().row(row).norm();
  return (std::abs(p.b()[row]) + a_norm * x.norm()) * p.c_norm() / std::abs(p.c_dot(i));
}

}  // namespace smm::testing
