#include "smm/diskopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "smm/detail/ldp.hpp"
#include "smm/projection.hpp"

namespace smm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// The recessive bias on the disk: F(y) = min_i (alpha_i + slope_i . y).
struct Pieces {
  Eigen::VectorXd alpha;
  Eigen::MatrixXd slope;  // one column per recessive constraint
  std::vector<bool> flat;

  double eval(const Eigen::VectorXd& y) const {
    return (alpha + slope.transpose() * y).minCoeff();
  }
};

// With `snap`, recessive constraints active at the center within the band
// are treated as exactly active (alpha = 0).
Pieces build_pieces(const LpProblem& p, const Disk& d, const Tolerances* snap = nullptr) {
  const auto& I = p.recessive();
  const auto k = static_cast<Eigen::Index>(I.size());
  Pieces out;
  out.alpha.resize(k);
  out.slope.resize(d.basis.cols(), k);
  out.flat.resize(I.size());
  for (Eigen::Index j = 0; j < k; ++j) {
    const Index i = I[static_cast<std::size_t>(j)];
    const Eigen::VectorXd a = p.A().row(static_cast<Eigen::Index>(i)).transpose();
    const double ac = p.c_dot(i);
    const double res = p.residual(i, d.center);
    const bool active = snap != nullptr && std::abs(res) <= snap->active_band(p.b()[static_cast<Eigen::Index>(i)]);
    out.alpha[j] = active ? 0.0 : -res / ac;
    const Eigen::VectorXd qa = d.basis.transpose() * a;
    out.flat[static_cast<std::size_t>(j)] = qa.norm() <= 1e-13 * a.norm();
    out.slope.col(j) = out.flat[static_cast<std::size_t>(j)] ? Eigen::VectorXd::Zero(qa.size()) : Eigen::VectorXd(-qa / ac);
  }
  return out;
}

// Non-recessive constraints evaluated at the recessive projection
// x = center + Q y + tau c:  row . y <= slack - tau * cdot.
struct SideConstraints {
  Eigen::MatrixXd row;  // one column per constraint
  Eigen::VectorXd slack;
  Eigen::VectorXd cdot;
  std::vector<bool> flat;
};

// Constraints active at the center within the tolerance band get zero slack,
// matching what ray_exit treats as active.
SideConstraints build_sides(const LpProblem& p, const Disk& d, const Tolerances& tol) {
  std::vector<Index> idx;
  for (Index i = 0; i < p.m(); ++i) {
    if (!p.is_recessive(i)) idx.push_back(i);
  }
  const auto q = static_cast<Eigen::Index>(idx.size());
  SideConstraints out;
  out.row.resize(d.basis.cols(), q);
  out.slack.resize(q);
  out.cdot.resize(q);
  out.flat.resize(idx.size());
  for (Eigen::Index j = 0; j < q; ++j) {
    const Index i = idx[static_cast<std::size_t>(j)];
    const Eigen::VectorXd a = p.A().row(static_cast<Eigen::Index>(i)).transpose();
    const Eigen::VectorXd qa = d.basis.transpose() * a;
    out.flat[static_cast<std::size_t>(j)] = qa.norm() <= 1e-13 * a.norm();
    out.row.col(j) = out.flat[static_cast<std::size_t>(j)] ? Eigen::VectorXd::Zero(qa.size()) : qa;
    const double slack = -p.residual(i, d.center);
    out.slack[j] = slack <= tol.active_band(p.b()[static_cast<Eigen::Index>(i)]) ? 0.0 : slack;
    out.cdot[j] = p.c_dot(i);
  }
  return out;
}

// Minimum-norm y with F(y) >= tau (and, when sides are given, a feasible
// recessive projection at level tau).
std::optional<Eigen::VectorXd> level_set_min_norm(const Pieces& pcs, const SideConstraints* sides,
                                                  double tau) {
  const Eigen::Index dim = pcs.slope.rows();
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;

  auto add = [&](const Eigen::VectorXd& g, double h, bool flat) {
    if (flat) return h <= 0.0;
    const double ng = g.norm();
    rows.push_back(g / ng);
    rhs.push_back(h / ng);
    return true;
  };

  for (Eigen::Index j = 0; j < pcs.slope.cols(); ++j) {
    if (!add(pcs.slope.col(j), tau - pcs.alpha[j], pcs.flat[static_cast<std::size_t>(j)])) return std::nullopt;
  }
  if (sides != nullptr) {
    for (Eigen::Index j = 0; j < sides->row.cols(); ++j) {
      const double h = tau * sides->cdot[j] - sides->slack[j];
      if (!add(-sides->row.col(j), h, sides->flat[static_cast<std::size_t>(j)])) return std::nullopt;
    }
  }

  Eigen::MatrixXd G(static_cast<Eigen::Index>(rows.size()), dim);
  Eigen::VectorXd h(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    G.row(static_cast<Eigen::Index>(j)) = rows[j].transpose();
    h[static_cast<Eigen::Index>(j)] = rhs[j];
  }
  return detail::least_distance(G, h);
}

DiskArgmaxResult finish(const LpProblem& p, const Disk& d, Eigen::VectorXd y, ArgmaxMethod method) {
  const double norm = y.norm();
  if (norm > d.radius) y *= d.radius / norm;
  DiskArgmaxResult out;
  out.v = d.point_at(y);
  out.bias = recessive_bias(p, out.v);
  out.y = std::move(y);
  out.method = method;
  return out;
}

// Interval case: the maximum sits at an endpoint, at the center (flat
// stretch through it) or at a crossing of two pieces.
Eigen::VectorXd interval_argmax(const Pieces& pcs, double r) {
  std::vector<double> cand{-r, 0.0, r};
  const Eigen::Index k = pcs.alpha.size();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double ds = pcs.slope(0, i) - pcs.slope(0, j);
      if (ds == 0.0) continue;
      const double y = (pcs.alpha[j] - pcs.alpha[i]) / ds;
      if (std::abs(y) <= r) cand.push_back(y);
    }
  }
  Eigen::VectorXd y1(1);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> values(cand.size());
  for (std::size_t j = 0; j < cand.size(); ++j) {
    y1[0] = cand[j];
    values[j] = pcs.eval(y1);
    best = std::max(best, values[j]);
  }
  const double tie = 4.0 * kEps * (1.0 + std::abs(best) + r * pcs.slope.cwiseAbs().maxCoeff());
  double chosen = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < cand.size(); ++j) {
    if (values[j] < best - tie) continue;
    if (std::abs(cand[j]) < std::abs(chosen) || (std::abs(cand[j]) == std::abs(chosen) && cand[j] < chosen)) {
      chosen = cand[j];
    }
  }
  y1[0] = chosen;
  return y1;
}

Eigen::VectorXd level_bisection(const Pieces& pcs, const SideConstraints* sides, double r, double tol_opt,
                                bool& ok) {
  const Eigen::Index dim = pcs.slope.rows();
  auto within = [r](const std::optional<Eigen::VectorXd>& y) {
    return y.has_value() && y->norm() <= r * (1.0 + 1e-12);
  };

  double lo = pcs.alpha.minCoeff();
  auto y_lo = level_set_min_norm(pcs, sides, lo);
  if (!within(y_lo)) {
    ok = false;
    return Eigen::VectorXd::Zero(dim);
  }
  ok = true;

  double hi = (pcs.alpha + r * pcs.slope.colwise().norm().transpose()).minCoeff();
  if (auto y_hi = level_set_min_norm(pcs, sides, hi); within(y_hi)) return *y_hi;

  const double stop = 1e-3 * tol_opt;
  for (int it = 0; it < 200 && hi - lo > stop; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    auto y = level_set_min_norm(pcs, sides, mid);
    if (within(y)) {
      lo = mid;
      y_lo = std::move(y);
    } else {
      hi = mid;
    }
  }
  return *y_lo;
}

void check_disk(const LpProblem& p, const Disk& d) {
  if (p.recessive().empty()) throw LpError(ErrorKind::EmptyRecessiveSet, "no recessive half-space");
  if (d.center.size() != static_cast<Eigen::Index>(p.n())) {
    throw LpError(ErrorKind::DimensionMismatch, "disk center has the wrong dimension");
  }
  if (!(d.radius >= 0.0)) throw LpError(ErrorKind::InvalidArgument, "disk radius must be nonnegative");
}

}  // namespace

Disk make_disk(const LpProblem& p, const Point& center, double radius) {
  if (center.size() != static_cast<Eigen::Index>(p.n())) {
    throw LpError(ErrorKind::DimensionMismatch, "disk center has the wrong dimension");
  }
  if (!(radius >= 0.0)) throw LpError(ErrorKind::InvalidArgument, "disk radius must be nonnegative");
  return Disk{center, radius, objective_hyperplane_basis(p.c())};
}

double default_tol_opt(const LpProblem& p, const Disk& d) {
  return 1e-9 * (1.0 + std::abs(recessive_bias(p, d.center)));
}

DiskArgmaxResult disk_argmax_exact(const LpProblem& p, const Disk& d, double tol_opt) {
  check_disk(p, d);
  const Eigen::Index dim = d.basis.cols();
  if (dim == 0 || d.radius == 0.0) return finish(p, d, Eigen::VectorXd::Zero(dim), ArgmaxMethod::Exact);
  if (tol_opt <= 0.0) tol_opt = default_tol_opt(p, d);

  const Pieces pcs = build_pieces(p, d);
  if (dim == 1) return finish(p, d, interval_argmax(pcs, d.radius), ArgmaxMethod::Exact);

  bool ok = false;
  Eigen::VectorXd y = level_bisection(pcs, nullptr, d.radius, tol_opt, ok);
  return finish(p, d, std::move(y), ArgmaxMethod::Exact);
}

DiskArgmaxResult disk_argmax_feasible(const LpProblem& p, const Disk& d, const Tolerances& tol, double tol_opt) {
  check_disk(p, d);
  const Eigen::Index dim = d.basis.cols();
  if (dim == 0 || d.radius == 0.0) return finish(p, d, Eigen::VectorXd::Zero(dim), ArgmaxMethod::Exact);
  if (tol_opt <= 0.0) tol_opt = default_tol_opt(p, d);

  const Pieces pcs = build_pieces(p, d, &tol);
  const SideConstraints sides = build_sides(p, d, tol);
  bool ok = false;
  Eigen::VectorXd y = level_bisection(pcs, &sides, d.radius, tol_opt, ok);
  const double norm = y.norm();
  if (norm > d.radius) y *= d.radius / norm;
  DiskArgmaxResult out;
  out.v = d.point_at(y);
  out.bias = pcs.eval(y);
  out.y = std::move(y);
  out.method = ArgmaxMethod::Exact;
  return out;
}

DiskArgmaxResult disk_argmax_field(const LpProblem& p, const ReceptiveField& field) {
  if (field.points.empty()) throw LpError(ErrorKind::InvalidArgument, "receptive field is empty");
  if (p.recessive().empty()) throw LpError(ErrorKind::EmptyRecessiveSet, "no recessive half-space");
  std::size_t best = 0;
  double best_bias = recessive_bias(p, field.points[0]);
  double best_dist = (field.points[0] - field.center).norm();
  for (std::size_t j = 1; j < field.points.size(); ++j) {
    const double b = recessive_bias(p, field.points[j]);
    const double dist = (field.points[j] - field.center).norm();
    if (b > best_bias || (b == best_bias && dist < best_dist)) {
      best = j;
      best_bias = b;
      best_dist = dist;
    }
  }
  DiskArgmaxResult out;
  out.v = field.points[best];
  out.bias = best_bias;
  out.y = field.tangent[best];
  out.method = ArgmaxMethod::Field;
  return out;
}

}  // namespace smm
