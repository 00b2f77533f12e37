#include "smm/receptive_field.hpp"

#include <string>

namespace smm {

const char* to_string(FieldKind kind) noexcept {
  switch (kind) {
    case FieldKind::Lattice: return "lattice";
    case FieldKind::Cruciform: return "cruciform";
  }
  return "?";
}

FieldKind parse_field_kind(std::string_view text) {
  if (text == "lattice") return FieldKind::Lattice;
  if (text == "cruciform") return FieldKind::Cruciform;
  throw LpError(ErrorKind::InvalidArgument, "unknown field kind '" + std::string(text) + "'");
}

namespace {

// Offset of grid node j out of eta on [-r, r].
double node(int j, int eta, double r) {
  if (eta == 1) return 0.0;
  return r * (2.0 * j / (eta - 1) - 1.0);
}

void push(ReceptiveField& f, Eigen::VectorXd y, int axis) {
  f.points.push_back(f.center + f.basis * y);
  f.tangent.push_back(std::move(y));
  f.axis.push_back(axis);
}

void build_lattice(ReceptiveField& f) {
  const auto dim = static_cast<int>(f.basis.cols());
  f.shape.assign(static_cast<std::size_t>(dim), static_cast<Index>(f.eta));
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    Eigen::VectorXd y(dim);
    for (int a = 0; a < dim; ++a) y[a] = node(idx[static_cast<std::size_t>(a)], f.eta, f.r);
    const double norm = y.norm();
    if (norm > f.r) y *= f.r / norm;
    push(f, std::move(y), -1);

    int a = dim - 1;
    for (; a >= 0; --a) {
      auto& i = idx[static_cast<std::size_t>(a)];
      if (++i < f.eta) break;
      i = 0;
    }
    if (a < 0) break;
  }
}

void build_cruciform(ReceptiveField& f) {
  if (f.eta % 2 == 0) throw LpError(ErrorKind::InvalidArgument, "cruciform field needs an odd eta");
  const auto dim = static_cast<int>(f.basis.cols());
  const int half = (f.eta - 1) / 2;
  f.shape = {static_cast<Index>((f.eta - 1) * dim + 1)};
  if (dim == 0) {
    push(f, Eigen::VectorXd(0), -1);
    return;
  }
  auto axis_points = [&](int a, int from, int to) {
    for (int j = from; j < to; ++j) {
      if (j == half) continue;
      Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
      y[a] = node(j, f.eta, f.r);
      push(f, std::move(y), a);
    }
  };
  axis_points(0, 0, half);
  push(f, Eigen::VectorXd::Zero(dim), -1);
  axis_points(0, half + 1, f.eta);
  for (int a = 1; a < dim; ++a) axis_points(a, 0, f.eta);
}

}  // namespace

ReceptiveField make_receptive_field(const Point& center, const Eigen::MatrixXd& basis, double r, int eta,
                                    FieldKind kind) {
  if (eta < 1) throw LpError(ErrorKind::InvalidArgument, "eta must be at least 1");
  if (!(r >= 0.0)) throw LpError(ErrorKind::InvalidArgument, "field radius must be nonnegative");
  if (basis.rows() != center.size()) {
    throw LpError(ErrorKind::DimensionMismatch, "field basis does not match the center");
  }
  ReceptiveField f;
  f.kind = kind;
  f.center = center;
  f.basis = basis;
  f.r = r;
  f.eta = eta;
  if (kind == FieldKind::Lattice) {
    build_lattice(f);
  } else {
    build_cruciform(f);
  }
  return f;
}

}  // namespace smm
