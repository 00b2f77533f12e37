#pragma once

#include <optional>

#include <Eigen/Dense>

namespace smm::detail {

// min ||E x - f|| subject to x >= 0 (Lawson & Hanson active-set method).
Eigen::VectorXd nnls(const Eigen::MatrixXd& E, const Eigen::VectorXd& f);

// Least-distance program: min ||y|| subject to G y >= h, with G q x d.
// Returns std::nullopt when the constraints are incompatible.
std::optional<Eigen::VectorXd> least_distance(const Eigen::MatrixXd& G, const Eigen::VectorXd& h);

}  // namespace smm::detail
