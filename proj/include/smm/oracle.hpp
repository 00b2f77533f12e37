#pragma once

#include <vector>

#include "smm/diskopt.hpp"
#include "smm/model.hpp"

namespace smm {

struct VertexSet {
  std::vector<Point> vertices;
  std::vector<IndexSet> active_sets;  // the n rows that produced each vertex
};

// Guard for the brute-force routines: n <= 10 and C(m, n) <= 1e7.
void check_enumeration_size(const LpProblem& p);

VertexSet enumerate_vertices(const LpProblem& p, const Tolerances& tol = {});

struct BruteForceOptimum {
  Point x_star;
  double f_star = 0.0;
};

BruteForceOptimum brute_force_optimum(const LpProblem& p, const Tolerances& tol = {});

// Best recessive bias over the center, the 2(n-1) axis endpoints and
// samples-1 Halton points of the ball.
DiskArgmaxResult grid_disk_argmax(const LpProblem& p, const Disk& d, Index samples);

}  // namespace smm
