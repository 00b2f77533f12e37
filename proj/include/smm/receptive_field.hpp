#pragma once

#include <vector>

#include "smm/model.hpp"

namespace smm {

enum class FieldKind { Lattice, Cruciform };

const char* to_string(FieldKind kind) noexcept;
FieldKind parse_field_kind(std::string_view text);

/// A structured point set on the objective hyperplane through `center`.
///
/// Points are stored together with their tangent coordinates (coefficients in
/// `basis`). Lattice fields are row-major over the n-1 tangent axes with the
/// last axis fastest; nodes of the [-r, r]^(n-1) grid that fall outside the
/// ball are clamped radially onto its boundary, so a lattice always has
/// eta^(n-1) points. Cruciform fields hold the center plus eta-1 nonzero
/// offsets along each tangent axis (eta odd).
struct ReceptiveField {
  FieldKind kind = FieldKind::Lattice;
  Point center;
  Eigen::MatrixXd basis;
  double r = 0.0;
  int eta = 1;
  std::vector<Point> points;
  std::vector<Eigen::VectorXd> tangent;
  std::vector<int> axis;  // cruciform: axis of the offset, -1 for the center
  std::vector<Index> shape;

  Index size() const noexcept { return points.size(); }
};

ReceptiveField make_receptive_field(const Point& center, const Eigen::MatrixXd& basis, double r,
                                    int eta, FieldKind kind);

}  // namespace smm
