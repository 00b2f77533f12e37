#include "smm/image.hpp"

#include "smm/diskopt.hpp"
#include "smm/projection.hpp"
#include "smm/solver.hpp"

namespace smm {

namespace {

nlohmann::json vec_json(const Eigen::VectorXd& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

LocalImage local_image(const LpProblem& p, const Point& u, int eta, double r, FieldKind kind) {
  if (p.recessive().empty()) throw LpError(ErrorKind::EmptyRecessiveSet, "no recessive half-space");
  if (u.size() != static_cast<Eigen::Index>(p.n())) {
    throw LpError(ErrorKind::DimensionMismatch, "image center has the wrong dimension");
  }
  LocalImage img;
  img.field = make_receptive_field(u, objective_hyperplane_basis(p.c()), r, eta, kind);
  img.values.reserve(img.field.size());
  for (const auto& z : img.field.points) img.values.push_back(recessive_bias(p, z));
  img.shape = img.field.shape;
  return img;
}

TrainingRecord emit_training_record(const LpProblem& p, const Point& u, const LocalImage& img,
                                    std::optional<std::uint64_t> seed) {
  TrainingRecord rec;
  rec.image = img;
  rec.u = u;
  rec.seed = seed;
  rec.label = Vector::Zero(u.size());
  rec.label_tangent = Eigen::VectorXd::Zero(img.field.basis.cols());
  rec.terminal = true;

  const Disk disk = make_disk(p, u, img.field.r);
  const DiskArgmaxResult arg = disk_argmax_exact(p, disk);
  const Vector d = recessive_projection(p, arg.v).point - u;
  if (p.objective(d) <= 0.0 || d.norm() == 0.0) return rec;
  if (ray_exit(p, u, d).lambda_max == 0.0) return rec;

  rec.terminal = false;
  rec.label = d / d.norm();
  if (arg.y.norm() > 0.0) rec.label_tangent = arg.y / arg.y.norm();
  return rec;
}

nlohmann::json to_json(const TrainingRecord& rec) {
  nlohmann::json image = {
      {"values", rec.image.values},
      {"shape", rec.image.shape},
      {"kind", to_string(rec.image.field.kind)},
  };
  nlohmann::json meta = {
      {"seed", rec.seed ? nlohmann::json(*rec.seed) : nlohmann::json(nullptr)},
      {"u", vec_json(rec.u)},
      {"r", rec.image.field.r},
      {"eta", rec.image.field.eta},
  };
  return {
      {"image", std::move(image)},
      {"label", vec_json(rec.label)},
      {"label_tangent", vec_json(rec.label_tangent)},
      {"terminal", rec.terminal},
      {"meta", std::move(meta)},
  };
}

}  // namespace smm
