#include "smm/solver.hpp"

#include <cmath>
#include <set>

#include "smm/projection.hpp"

namespace smm {

const char* to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::IterationLimit: return "IterationLimit";
    case SolveStatus::RadiusFloor: return "RadiusFloor";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::BadDirection: return "BadDirection";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(eps_f > 0.0)) throw LpError(ErrorKind::InvalidArgument, "eps_f must be positive");
  if (!(r_min > 0.0 && r_min < r0)) throw LpError(ErrorKind::InvalidArgument, "need 0 < r_min < r0");
  if (!(shrink > 0.0 && shrink < 1.0)) throw LpError(ErrorKind::InvalidArgument, "shrink must lie in (0, 1)");
  if (argmax.eta < 1) throw LpError(ErrorKind::InvalidArgument, "eta must be at least 1");
  tol.validate();
}

RayExit ray_exit(const LpProblem& p, const Point& u, const Vector& d, const Tolerances& tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  RayExit out{inf, {}};
  const double dn = d.norm();
  std::vector<Index> outward;
  for (Index i = 0; i < p.m(); ++i) {
    const auto row = p.A().row(static_cast<Eigen::Index>(i));
    const double ad = row.dot(d);
    if (ad <= 1e-10 * row.norm() * dn) continue;
    outward.push_back(i);
    // A non-recessive constraint inside the active band blocks at once. A
    // recessive one keeps its exact ratio: the disk argmax honours recessive
    // constraints, so its direction may legitimately close a residual gap.
    const double res = p.residual(i, u);
    const bool active = std::abs(res) <= tol.active_band(p.b()[static_cast<Eigen::Index>(i)]);
    const double ratio = active && !p.is_recessive(i) ? 0.0 : -res / ad;
    out.lambda_max = std::min(out.lambda_max, std::max(ratio, 0.0));
  }
  if (out.unbounded()) return out;
  const Point x = u + out.lambda_max * d;
  for (Index i : outward) {
    if (std::abs(p.residual(i, x)) <= tol.active_band(p.b()[static_cast<Eigen::Index>(i)])) {
      out.blocking.push_back(i);
    }
  }
  return out;
}

namespace {

bool in_recessive_polytope(const LpProblem& p, const Point& x, const Tolerances& tol) {
  for (Index i : p.recessive()) {
    if (p.residual(i, x) > tol.feas) return false;
  }
  return true;
}

bool on_hyperplane(const LpProblem& p, Index i, const Point& x, const Tolerances& tol) {
  return std::abs(p.residual(i, x)) <= tol.active_band(p.b()[static_cast<Eigen::Index>(i)]);
}

Vector along_hyperplane(const LpProblem& p, Index i, const Vector& d) {
  const Eigen::VectorXd a = p.A().row(static_cast<Eigen::Index>(i)).transpose();
  return d - (a.dot(d) / a.squaredNorm()) * a;
}

enum class Outcome { Accept, Stall, Shrink, Unbounded };

struct Attempt {
  Outcome outcome = Outcome::Stall;
  IterationRecord rec;
  Point next;
};

class Runner {
 public:
  Runner(const LpProblem& p, const SolverConfig& cfg) : p_(p), cfg_(cfg) {}

  Attempt step(const Point& u, double r, bool feasible) const {
    Attempt at;
    const Disk disk = make_disk(p_, u, r);
    DiskArgmaxResult arg;
    if (feasible) {
      arg = disk_argmax_feasible(p_, disk, cfg_.tol);
    } else if (cfg_.argmax.method == ArgmaxMethod::Field) {
      arg = disk_argmax_field(p_, make_receptive_field(u, disk.basis, r, cfg_.argmax.eta, cfg_.argmax.kind));
    } else {
      arg = disk_argmax_exact(p_, disk);
    }
    const Point w = feasible ? Point(arg.v + arg.bias * p_.c()) : recessive_projection(p_, arg.v).point;
    const double gain = p_.objective(w - u);
    if (gain <= cfg_.eps_f) return at;

    const auto h = common_recessive_hyperplane(p_, u, w, cfg_.tol);
    if (!h) {
      at.outcome = Outcome::Shrink;
      return at;
    }
    const Vector d = along_hyperplane(p_, *h, w - u);
    const RayExit ex = ray_exit(p_, u, d, cfg_.tol);
    if (ex.unbounded()) {
      at.outcome = Outcome::Unbounded;
      return at;
    }
    if (ex.lambda_max == 0.0) {
      at.outcome = Outcome::Shrink;
      return at;
    }
    at.outcome = Outcome::Accept;
    at.next = u + ex.lambda_max * d;
    auto& rec = at.rec;
    rec.u = u;
    rec.v = arg.v;
    rec.w = w;
    rec.d = d;
    rec.lambda_max = ex.lambda_max;
    rec.r_used = r;
    rec.gain = gain;
    rec.active_before = active_set(p_, u, cfg_.tol);
    rec.active_after = active_set(p_, at.next, cfg_.tol);
    rec.common_hyperplane = h;
    rec.feasible_restricted = feasible;
    const double cw = p_.objective(w);
    const double cn = p_.objective(at.next);
    rec.reaches_w = cw <= cn + 1e-12 * (1.0 + std::abs(cn));
    return at;
  }

 private:
  const LpProblem& p_;
  const SolverConfig& cfg_;
};

void record(Solution& sol, IterationRecord rec, Index shrinks, std::set<Index>& seen) {
  rec.k = sol.trace.size();
  rec.shrink_count = shrinks;
  if (rec.common_hyperplane) {
    const Index h = *rec.common_hyperplane;
    const bool same_as_last = !sol.trace.empty() && sol.trace.back().common_hyperplane == h;
    if (!same_as_last && seen.count(h) != 0) ++sol.hyperplane_revisits;
    seen.insert(h);
  }
  sol.trace.push_back(std::move(rec));
  sol.iterations = sol.trace.size();
}

void finish(const LpProblem& p, Solution& sol, const Point& u, SolveStatus status) {
  sol.x = u;
  sol.objective = p.objective(u);
  sol.status = status;
}

void check_start(const LpProblem& p, const Point& start) {
  if (start.size() != static_cast<Eigen::Index>(p.n())) {
    throw LpError(ErrorKind::DimensionMismatch, "start point has the wrong dimension");
  }
  if (p.recessive().empty()) throw LpError(ErrorKind::EmptyRecessiveSet, "no recessive half-space");
}

}  // namespace

std::optional<Index> common_recessive_hyperplane(const LpProblem& p, const Point& u, const Point& w,
                                                 const Tolerances& tol) {
  if (!in_recessive_polytope(p, u, tol) || !in_recessive_polytope(p, w, tol)) return std::nullopt;
  for (Index i : p.recessive()) {
    if (on_hyperplane(p, i, u, tol) && on_hyperplane(p, i, w, tol)) return i;
  }
  return std::nullopt;
}

Solution solve(const LpProblem& p, const Point& start, const SolverConfig& cfg) {
  cfg.validate();
  check_start(p, start);
  const Runner run(p, cfg);
  const Index cap = cfg.iteration_cap(p);

  Solution sol;
  std::set<Index> seen;
  Point u = lift_to_surface(p, start, cfg.tol);
  double r = cfg.r0;
  Index shrinks = 0;

  while (true) {
    if (sol.iterations >= cap) {
      finish(p, sol, u, SolveStatus::IterationLimit);
      return sol;
    }
    Attempt at = run.step(u, r, false);
    if (at.outcome == Outcome::Accept) {
      u = at.next;
      record(sol, std::move(at.rec), shrinks, seen);
      shrinks = 0;
      continue;
    }
    if (at.outcome == Outcome::Unbounded) {
      finish(p, sol, u, SolveStatus::Unbounded);
      return sol;
    }
    SolveStatus stalled = SolveStatus::Optimal;
    if (at.outcome == Outcome::Shrink) {
      r *= cfg.shrink;
      ++shrinks;
      if (r >= cfg.r_min) continue;
      stalled = SolveStatus::RadiusFloor;
    }
    if (!cfg.certify) {
      finish(p, sol, u, stalled);
      return sol;
    }

    // No ascent left on the recessive boundary near u. Look for one that
    // stays inside M before giving up.
    double rc = cfg.r0;
    bool resumed = false;
    while (rc >= cfg.r_min) {
      Attempt cert = run.step(u, rc, true);
      if (cert.outcome == Outcome::Stall) break;
      if (cert.outcome == Outcome::Unbounded) {
        finish(p, sol, u, SolveStatus::Unbounded);
        return sol;
      }
      if (cert.outcome == Outcome::Accept) {
        u = cert.next;
        record(sol, std::move(cert.rec), shrinks, seen);
        shrinks = 0;
        r = cfg.r0;
        resumed = true;
        break;
      }
      rc *= cfg.shrink;
      ++shrinks;
    }
    if (resumed) continue;
    finish(p, sol, u, rc >= cfg.r_min ? SolveStatus::Optimal : stalled);
    return sol;
  }
}

Solution solve_with_oracle(const LpProblem& p, const Point& start, const DirectionOracle& oracle,
                           const ImageParams& image, const SolverConfig& cfg) {
  cfg.validate();
  check_start(p, start);
  if (!(image.r > 0.0)) throw LpError(ErrorKind::InvalidArgument, "image radius must be positive");
  const Index cap = cfg.iteration_cap(p);

  Solution sol;
  std::set<Index> seen;
  Point u = lift_to_surface(p, start, cfg.tol);
  double r = image.r;
  Index shrinks = 0;

  while (true) {
    if (sol.iterations >= cap) {
      finish(p, sol, u, SolveStatus::IterationLimit);
      return sol;
    }
    const LocalImage img = local_image(p, u, image.eta, r, image.kind);
    const Vector raw = oracle(p, u, img);
    if (raw.size() != static_cast<Eigen::Index>(p.n())) {
      throw LpError(ErrorKind::DimensionMismatch, "oracle direction has the wrong dimension");
    }
    if (!raw.allFinite()) throw LpError(ErrorKind::InvalidArgument, "oracle direction is not finite");
    if ((raw.array() == 0.0).all()) {
      finish(p, sol, u, SolveStatus::Optimal);
      return sol;
    }
    if (p.objective(raw) <= 0.0) {
      finish(p, sol, u, SolveStatus::BadDirection);
      return sol;
    }

    std::optional<Index> h;
    for (Index i : p.recessive()) {
      const auto row = p.A().row(static_cast<Eigen::Index>(i));
      if (on_hyperplane(p, i, u, cfg.tol) && std::abs(row.dot(raw)) <= 1e-9 * row.norm() * raw.norm()) {
        h = i;
        break;
      }
    }
    RayExit ex;
    Vector d;
    if (h) {
      d = along_hyperplane(p, *h, raw);
      ex = ray_exit(p, u, d, cfg.tol);
      if (ex.unbounded()) {
        finish(p, sol, u, SolveStatus::Unbounded);
        return sol;
      }
    }
    if (!h || ex.lambda_max == 0.0) {
      r *= cfg.shrink;
      ++shrinks;
      if (r < cfg.r_min) {
        finish(p, sol, u, SolveStatus::RadiusFloor);
        return sol;
      }
      continue;
    }

    IterationRecord rec;
    const Point next = u + ex.lambda_max * d;
    rec.u = u;
    rec.v = u + raw;
    rec.w = u + raw;
    rec.d = d;
    rec.lambda_max = ex.lambda_max;
    rec.r_used = r;
    rec.gain = p.objective(raw);
    rec.active_before = active_set(p, u, cfg.tol);
    rec.active_after = active_set(p, next, cfg.tol);
    rec.common_hyperplane = h;
    rec.reaches_w = p.objective(rec.w) <= p.objective(next) + 1e-12 * (1.0 + std::abs(p.objective(next)));
    record(sol, std::move(rec), shrinks, seen);
    shrinks = 0;
    u = next;
  }
}

DirectionOracle exact_argmax_oracle(double eps_f) {
  return [eps_f](const LpProblem& p, const Point& u, const LocalImage& img) -> Vector {
    const DiskArgmaxResult arg = disk_argmax_exact(p, make_disk(p, u, img.field.r));
    const Vector d = recessive_projection(p, arg.v).point - u;
    if (p.objective(d) <= eps_f) return Vector::Zero(u.size());
    return d;
  };
}

DirectionOracle field_argmax_oracle(double eps_f) {
  return [eps_f](const LpProblem& p, const Point& u, const LocalImage& img) -> Vector {
    const DiskArgmaxResult arg = disk_argmax_field(p, img.field);
    if (arg.bias * p.c_norm() * p.c_norm() <= eps_f) return Vector::Zero(u.size());
    return recessive_projection(p, arg.v).point - u;
  };
}

}  // namespace smm
