#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "smm/diskopt.hpp"
#include "smm/image.hpp"
#include "smm/model.hpp"

namespace smm {

enum class SolveStatus { Optimal, IterationLimit, RadiusFloor, Unbounded, BadDirection };

const char* to_string(SolveStatus s) noexcept;

struct ArgmaxMode {
  ArgmaxMethod method = ArgmaxMethod::Exact;
  int eta = 5;
  FieldKind kind = FieldKind::Cruciform;
};

struct SolverConfig {
  double eps_f = 1e-8;  // stop once <c, w - u> <= eps_f
  double r0 = 0.1;
  double r_min = 1e-12;
  std::optional<Index> max_iter;  // default 10 m + 100
  double shrink = 0.5;
  Tolerances tol;
  ArgmaxMode argmax;
  // Before stopping, re-solve the disk argmax restricted to feasible
  // projections to confirm that no ascent step inside M remains.
  bool certify = true;

  void validate() const;
  Index iteration_cap(const LpProblem& p) const { return max_iter.value_or(10 * p.m() + 100); }
};

struct IterationRecord {
  Index k = 0;
  Point u, v, w;
  Vector d;
  double lambda_max = 0.0;
  double r_used = 0.0;
  double gain = 0.0;  // <c, w - u>
  IndexSet active_before, active_after;
  Index shrink_count = 0;
  std::optional<Index> common_hyperplane;
  bool feasible_restricted = false;  // step came from the certification argmax
  bool reaches_w = true;             // <c, w> <= <c, u_next>
};

struct Solution {
  Point x;
  double objective = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  std::vector<IterationRecord> trace;
  Index iterations = 0;
  Index hyperplane_revisits = 0;
};

struct RayExit {
  double lambda_max = 0.0;  // +inf when nothing blocks the ray
  IndexSet blocking;

  bool unbounded() const noexcept { return lambda_max == std::numeric_limits<double>::infinity(); }
};

/// Largest step u + lambda d that stays in M. Constraints already active at
/// u that d moves outward block at lambda = 0.
RayExit ray_exit(const LpProblem& p, const Point& u, const Vector& d, const Tolerances& tol = {});

/// Smallest recessive i whose hyperplane contains both u and w, with both
/// points inside the recessive polytope.
std::optional<Index> common_recessive_hyperplane(const LpProblem& p, const Point& u, const Point& w,
                                                 const Tolerances& tol = {});

/// Surface movement: repeatedly step toward the recessive projection of the
/// disk argmax along the surface, shrinking the disk radius whenever the
/// step would leave the current recessive face or is blocked at once.
Solution solve(const LpProblem& p, const Point& start, const SolverConfig& cfg = {});

// Returns the next direction from a local image at u, or the zero vector to
// stop.
using DirectionOracle = std::function<Vector(const LpProblem&, const Point&, const LocalImage&)>;

struct ImageParams {
  int eta = 5;
  FieldKind kind = FieldKind::Cruciform;
  double r = 0.1;
};

Solution solve_with_oracle(const LpProblem& p, const Point& start, const DirectionOracle& oracle,
                           const ImageParams& image, const SolverConfig& cfg = {});

// d = w - u for the exact disk argmax on the image's radius; zero when the
// gain is at most eps_f.
DirectionOracle exact_argmax_oracle(double eps_f = 1e-8);

// Same, but the argmax is taken over the image's own field points.
DirectionOracle field_argmax_oracle(double eps_f = 1e-8);

}  // namespace smm
