#include "smm/detail/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace smm::detail {

namespace {

// Unconstrained least squares on the passive columns.
Eigen::VectorXd passive_solve(const Eigen::MatrixXd& E, const Eigen::VectorXd& f,
                              const std::vector<Eigen::Index>& passive) {
  Eigen::MatrixXd Ep(E.rows(), static_cast<Eigen::Index>(passive.size()));
  for (std::size_t j = 0; j < passive.size(); ++j) Ep.col(static_cast<Eigen::Index>(j)) = E.col(passive[j]);
  return Ep.completeOrthogonalDecomposition().solve(f);
}

}  // namespace

Eigen::VectorXd nnls(const Eigen::MatrixXd& E, const Eigen::VectorXd& f) {
  const Eigen::Index k = E.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
  if (k == 0) return x;

  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     std::max<double>(1.0, E.cwiseAbs().maxCoeff()) *
                     static_cast<double>(std::max(E.rows(), k));
  std::vector<bool> in_passive(static_cast<std::size_t>(k), false);
  std::vector<bool> banned(static_cast<std::size_t>(k), false);
  std::vector<Eigen::Index> passive;

  auto to_x = [&](const Eigen::VectorXd& z) {
    x.setZero();
    for (std::size_t j = 0; j < passive.size(); ++j) x[passive[j]] = z[static_cast<Eigen::Index>(j)];
  };

  const Eigen::Index max_outer = 3 * k + 10;
  for (Eigen::Index outer = 0; outer < max_outer; ++outer) {
    const Eigen::VectorXd w = E.transpose() * (f - E * x);
    Eigen::Index t = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      if (!in_passive[ju] && !banned[ju] && w[j] > wmax) {
        wmax = w[j];
        t = j;
      }
    }
    if (t < 0) break;

    passive.push_back(t);
    in_passive[static_cast<std::size_t>(t)] = true;
    Eigen::VectorXd z = passive_solve(E, f, passive);

    // In exact arithmetic the entering coefficient is positive; when rounding
    // says otherwise, skip the column until x changes.
    if (z[static_cast<Eigen::Index>(passive.size() - 1)] <= tol) {
      passive.pop_back();
      in_passive[static_cast<std::size_t>(t)] = false;
      banned[static_cast<std::size_t>(t)] = true;
      continue;
    }
    std::fill(banned.begin(), banned.end(), false);

    for (Eigen::Index inner = 0; inner < 3 * k + 10; ++inner) {
      bool feasible = true;
      double alpha = 1.0;
      for (std::size_t j = 0; j < passive.size(); ++j) {
        const double zj = z[static_cast<Eigen::Index>(j)];
        if (zj <= tol) {
          feasible = false;
          const double xj = x[passive[j]];
          const double denom = xj - zj;
          alpha = std::min(alpha, denom > 0.0 ? xj / denom : 0.0);
        }
      }
      if (feasible) break;

      for (std::size_t j = 0; j < passive.size(); ++j) {
        x[passive[j]] += alpha * (z[static_cast<Eigen::Index>(j)] - x[passive[j]]);
      }
      std::vector<Eigen::Index> keep;
      for (Eigen::Index j : passive) {
        if (x[j] > tol) {
          keep.push_back(j);
        } else {
          x[j] = 0.0;
          in_passive[static_cast<std::size_t>(j)] = false;
        }
      }
      passive.swap(keep);
      if (passive.empty()) {
        z.resize(0);
        break;
      }
      z = passive_solve(E, f, passive);
    }
    to_x(z);
  }
  return x;
}

std::optional<Eigen::VectorXd> least_distance(const Eigen::MatrixXd& G, const Eigen::VectorXd& h) {
  const Eigen::Index q = G.rows();
  const Eigen::Index d = G.cols();
  if (q == 0 || (h.array() <= 0.0).all()) return Eigen::VectorXd::Zero(d);

  Eigen::MatrixXd E(d + 1, q);
  E.topRows(d) = G.transpose();
  E.row(d) = h.transpose();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(d + 1);
  f[d] = 1.0;

  const Eigen::VectorXd u = nnls(E, f);
  const Eigen::VectorXd r = E * u - f;
  // r_d = h.u - 1; it stays below zero exactly when the system is solvable.
  if (!(r[d] < -1e-12)) return std::nullopt;
  const Eigen::VectorXd y = -r.head(d) / r[d];

  // Near the edge of solvability the division above amplifies rounding, so
  // the answer is re-derived from the constraints the multipliers mark as
  // binding and accepted only if it satisfies every constraint.
  const double slack = 1e-10 * (1.0 + h.cwiseAbs().maxCoeff());
  auto admissible = [&](const Eigen::VectorXd& z) {
    return z.allFinite() && (G * z - h).minCoeff() >= -slack * (1.0 + z.norm());
  };
  std::vector<Eigen::Index> binding;
  for (Eigen::Index j = 0; j < q; ++j) {
    if (u[j] > 0.0) binding.push_back(j);
  }
  if (!binding.empty()) {
    Eigen::MatrixXd Gb(static_cast<Eigen::Index>(binding.size()), d);
    Eigen::VectorXd hb(Gb.rows());
    for (Eigen::Index j = 0; j < Gb.rows(); ++j) {
      Gb.row(j) = G.row(binding[static_cast<std::size_t>(j)]);
      hb[j] = h[binding[static_cast<std::size_t>(j)]];
    }
    const Eigen::VectorXd polished = Gb.completeOrthogonalDecomposition().solve(hb);
    if (admissible(polished) && polished.norm() <= y.norm() * (1.0 + 1e-9) + 1e-15) return polished;
  }
  if (admissible(y)) return y;
  return std::nullopt;
}

}  // namespace smm::detail
