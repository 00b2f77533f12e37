#include <doctest.h>

#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "smm/detail/ldp.hpp"

using smm::detail::least_distance;
using smm::detail::nnls;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd M(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) M(i, j) = g(rng);
  return M;
}

Eigen::MatrixXd columns(const Eigen::MatrixXd& M, unsigned mask) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    if (mask & (1u << j)) keep.push_back(j);
  Eigen::MatrixXd out(M.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = M.col(keep[k]);
  return out;
}

// Smallest residual over every support set whose unconstrained least-squares
// solution is nonnegative.
double brute_nnls_residual(const Eigen::MatrixXd& E, const Eigen::VectorXd& f) {
  double best = f.norm();
  for (unsigned mask = 1; mask < (1u << E.cols()); ++mask) {
    const Eigen::MatrixXd Es = columns(E, mask);
    const Eigen::VectorXd x = Es.completeOrthogonalDecomposition().solve(f);
    if (x.minCoeff() < -1e-12) continue;
    best = std::min(best, (Es * x - f).norm());
  }
  return best;
}

// Minimum-norm point of { y | G y >= h } by trying every subset of rows as
// equalities.
std::optional<double> brute_least_distance(const Eigen::MatrixXd& G, const Eigen::VectorXd& h) {
  std::optional<double> best;
  auto consider = [&](const Eigen::VectorXd& y) {
    if ((G * y - h).minCoeff() < -1e-9) return;
    if (!best || y.norm() < *best) best = y.norm();
  };
  consider(Eigen::VectorXd::Zero(G.cols()));
  for (unsigned mask = 1; mask < (1u << G.rows()); ++mask) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < G.rows(); ++i)
      if (mask & (1u << i)) rows.push_back(i);
    Eigen::MatrixXd Gs(static_cast<Eigen::Index>(rows.size()), G.cols());
    Eigen::VectorXd hs(Gs.rows());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Gs.row(static_cast<Eigen::Index>(k)) = G.row(rows[k]);
      hs[static_cast<Eigen::Index>(k)] = h[rows[k]];
    }
    const Eigen::VectorXd y = Gs.completeOrthogonalDecomposition().solve(hs);
    if ((Gs * y - hs).norm() > 1e-9) continue;
    consider(y);
  }
  return best;
}

}  // namespace

TEST_CASE("nnls on small hand cases") {
  Eigen::MatrixXd E(2, 2);
  E << 1, 0, 0, 1;
  const Eigen::VectorXd x = nnls(E, Eigen::Vector2d(3, -2));
  CHECK(x[0] == doctest::Approx(3));
  CHECK(x[1] == doctest::Approx(0));
  CHECK(nnls(E, Eigen::Vector2d(-1, -1)).norm() == 0.0);
}

TEST_CASE("nnls matches exhaustive support search") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 400; ++k) {
    const Eigen::Index rows = 2 + k % 5, cols = 1 + k % 6;
    const Eigen::MatrixXd E = random_matrix(rng, rows, cols);
    const Eigen::VectorXd f = random_matrix(rng, rows, 1);
    const Eigen::VectorXd x = nnls(E, f);
    CHECK(x.minCoeff() >= 0.0);
    CHECK((E * x - f).norm() <= brute_nnls_residual(E, f) + 1e-9);
  }
}

TEST_CASE("least-distance program") {
  SUBCASE("single half-plane") {
    Eigen::MatrixXd G(1, 2);
    G << 1, 1;
    const auto y = least_distance(G, Eigen::VectorXd::Constant(1, 2.0));
    REQUIRE(y.has_value());
    CHECK((*y - Eigen::Vector2d(1, 1)).norm() <= 1e-12);
  }
  SUBCASE("origin already feasible") {
    Eigen::MatrixXd G(2, 2);
    G << 1, 0, 0, 1;
    const auto y = least_distance(G, Eigen::Vector2d(-1, 0));
    REQUIRE(y.has_value());
    CHECK(y->norm() == 0.0);
  }
  SUBCASE("incompatible constraints") {
    Eigen::MatrixXd G(2, 1);
    G << 1, -1;
    CHECK_FALSE(least_distance(G, Eigen::Vector2d(1, 0)).has_value());
  }
  SUBCASE("agrees with exhaustive active-set search") {
    std::mt19937_64 rng(17);
    int feasible = 0;
    for (int k = 0; k < 400; ++k) {
      const Eigen::Index q = 1 + k % 6, d = 1 + k % 4;
      const Eigen::MatrixXd G = random_matrix(rng, q, d);
      const Eigen::VectorXd h = random_matrix(rng, q, 1);
      const auto got = least_distance(G, h);
      const auto want = brute_least_distance(G, h);
      CHECK(got.has_value() == want.has_value());
      if (got && want) {
        ++feasible;
        CHECK((G * *got - h).minCoeff() >= -1e-9);
        CHECK(got->norm() == doctest::Approx(*want).epsilon(1e-7));
      }
    }
    CHECK(feasible > 100);
  }
}
