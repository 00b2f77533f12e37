#include "smm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "smm/projection.hpp"

namespace smm {

namespace {

double binomial(Index m, Index k) {
  if (k > m) return 0.0;
  k = std::min(k, m - k);
  double out = 1.0;
  for (Index j = 1; j <= k; ++j) out = out * static_cast<double>(m - k + j) / static_cast<double>(j);
  return out;
}

// Gaussian elimination with partial pivoting. A pivot below 1e-12 times the
// scale of its original row marks the system singular.
std::optional<Eigen::VectorXd> solve_square(Eigen::MatrixXd M, Eigen::VectorXd rhs) {
  const Eigen::Index n = M.rows();
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) scale[i] = M.row(i).cwiseAbs().maxCoeff();

  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (std::abs(M(i, col)) > std::abs(M(piv, col))) piv = i;
    }
    if (std::abs(M(piv, col)) < 1e-12 * scale[piv]) return std::nullopt;
    if (piv != col) {
      M.row(piv).swap(M.row(col));
      std::swap(rhs[piv], rhs[col]);
      std::swap(scale[piv], scale[col]);
    }
    for (Eigen::Index i = col + 1; i < n; ++i) {
      const double f = M(i, col) / M(col, col);
      if (f == 0.0) continue;
      M.row(i).tail(n - col) -= f * M.row(col).tail(n - col);
      rhs[i] -= f * rhs[col];
    }
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const double s = M.row(i).tail(n - i - 1).dot(x.tail(n - i - 1));
    x[i] = (rhs[i] - s) / M(i, i) + 0.0;  // no negative zeros
  }
  return x;
}

// i-th element of the van der Corput sequence in the given base.
double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, out = 0.0;
  while (i > 0) {
    out += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return out;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

void check_enumeration_size(const LpProblem& p) {
  if (p.n() > 10) throw LpError(ErrorKind::TooLarge, "vertex enumeration limited to n <= 10");
  if (binomial(p.m(), p.n()) > 1e7) {
    throw LpError(ErrorKind::TooLarge, "vertex enumeration limited to C(m, n) <= 1e7 subsets");
  }
}

VertexSet enumerate_vertices(const LpProblem& p, const Tolerances& tol) {
  check_enumeration_size(p);
  const Index n = p.n(), m = p.m();
  VertexSet out;
  if (m < n) return out;

  std::vector<Index> rows(n);
  std::iota(rows.begin(), rows.end(), Index{0});
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd M(ni, ni);
  Eigen::VectorXd rhs(ni);
  while (true) {
    for (Index j = 0; j < n; ++j) {
      M.row(static_cast<Eigen::Index>(j)) = p.A().row(static_cast<Eigen::Index>(rows[j]));
      rhs[static_cast<Eigen::Index>(j)] = p.b()[static_cast<Eigen::Index>(rows[j])];
    }
    if (auto x = solve_square(M, rhs); x && is_feasible(p, *x, tol)) {
      const bool dup = std::any_of(out.vertices.begin(), out.vertices.end(), [&](const Point& v) {
        return (v - *x).cwiseAbs().maxCoeff() <= 1e-7;
      });
      if (!dup) {
        out.vertices.push_back(*x);
        out.active_sets.push_back(rows);
      }
    }

    // Next n-subset in lexicographic order.
    Index j = n;
    while (j > 0 && rows[j - 1] == m - n + (j - 1)) --j;
    if (j == 0) break;
    ++rows[j - 1];
    for (Index k = j; k < n; ++k) rows[k] = rows[k - 1] + 1;
  }
  return out;
}

BruteForceOptimum brute_force_optimum(const LpProblem& p, const Tolerances& tol) {
  const VertexSet vs = enumerate_vertices(p, tol);
  if (vs.vertices.empty()) throw LpError(ErrorKind::Infeasible, "no feasible vertex");
  const Point* best = &vs.vertices.front();
  double fbest = p.objective(*best);
  for (const Point& v : vs.vertices) {
    const double f = p.objective(v);
    const double tie = 1e-12 * (1.0 + std::abs(fbest));
    const bool lex_smaller = std::lexicographical_compare(v.begin(), v.end(), best->begin(), best->end());
    if (f > fbest + tie || (std::abs(f - fbest) <= tie && lex_smaller)) {
      best = &v;
      fbest = f;
    }
  }
  return {*best, fbest};
}

DiskArgmaxResult grid_disk_argmax(const LpProblem& p, const Disk& d, Index samples) {
  if (samples < 1) throw LpError(ErrorKind::InvalidArgument, "samples must be at least 1");
  const Eigen::Index dim = d.basis.cols();
  if (static_cast<std::size_t>(dim) > std::size(kPrimes)) {
    throw LpError(ErrorKind::TooLarge, "grid oracle supports at most 16 tangent dimensions");
  }

  DiskArgmaxResult best;
  best.y = Eigen::VectorXd::Zero(dim);
  best.v = d.center;
  best.bias = recessive_bias(p, d.center);
  best.method = ArgmaxMethod::Field;
  auto consider = [&](const Eigen::VectorXd& y) {
    const Point z = d.point_at(y);
    const double b = recessive_bias(p, z);
    if (b > best.bias) {
      best.bias = b;
      best.v = z;
      best.y = y;
    }
  };
  if (dim == 0 || d.radius == 0.0) return best;

  for (Eigen::Index a = 0; a < dim; ++a) {
    for (double s : {-1.0, 1.0}) {
      Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
      y[a] = s * d.radius;
      consider(y);
    }
  }
  Eigen::VectorXd y(dim);
  std::uint64_t idx = 1;
  for (Index taken = 1; taken < samples; ++idx) {
    for (Eigen::Index a = 0; a < dim; ++a) {
      y[a] = d.radius * (2.0 * radical_inverse(idx, kPrimes[a]) - 1.0);
    }
    if (y.norm() > d.radius) continue;
    consider(y);
    ++taken;
  }
  return best;
}

}  // namespace smm
