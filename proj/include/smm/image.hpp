#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "smm/receptive_field.hpp"

namespace smm {

// Recessive biases sampled on a receptive field, in field order.
struct LocalImage {
  ReceptiveField field;
  std::vector<double> values;
  std::vector<Index> shape;
};

LocalImage local_image(const LpProblem& p, const Point& u, int eta, double r, FieldKind kind);

struct TrainingRecord {
  LocalImage image;
  Vector label;          // unit direction d/||d|| in ambient coordinates
  Vector label_tangent;  // unit direction of the disk argmax in tangent coordinates
  bool terminal = false;
  Point u;
  std::optional<std::uint64_t> seed;
};

/// Labels an image with the direction the exact disk argmax would take at u.
/// The label is zero and the record terminal when no gain is available or
/// the ray along d is blocked immediately.
TrainingRecord emit_training_record(const LpProblem& p, const Point& u, const LocalImage& img,
                                    std::optional<std::uint64_t> seed = std::nullopt);

nlohmann::json to_json(const TrainingRecord& rec);

}  // namespace smm
