#include "smm/model.hpp"

#include <cmath>
#include <random>
#include <string>

#include <json.hpp>

namespace smm {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroConstraintRow: return "ZeroConstraintRow";
    case ErrorKind::ZeroObjective: return "ZeroObjective";
    case ErrorKind::TooFewConstraints: return "TooFewConstraints";
    case ErrorKind::EmptyRecessiveSet: return "EmptyRecessiveSet";
    case ErrorKind::InfeasibleStart: return "InfeasibleStart";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  if (!(active > 0.0) || !(feas > 0.0)) {
    throw LpError(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
}

double Tolerances::active_band(double b) const noexcept { return active * (1.0 + std::abs(b)); }

LpProblem::LpProblem(Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c,
                     std::optional<Point> interior_point)
    : A_(std::move(A)), b_(std::move(b)), c_(std::move(c)), interior_(std::move(interior_point)) {
  if (A_.rows() != b_.size()) {
    throw LpError(ErrorKind::DimensionMismatch,
                  "A has " + std::to_string(A_.rows()) + " rows but b has " +
                      std::to_string(b_.size()) + " entries");
  }
  if (A_.cols() != c_.size()) {
    throw LpError(ErrorKind::DimensionMismatch,
                  "A has " + std::to_string(A_.cols()) + " columns but c has " +
                      std::to_string(c_.size()) + " entries");
  }
  if (A_.cols() < 1) throw LpError(ErrorKind::DimensionMismatch, "dimension n must be at least 1");
  if (A_.rows() <= 1) {
    throw LpError(ErrorKind::TooFewConstraints, "at least two constraints are required (m > 1)");
  }
  if (interior_ && interior_->size() != c_.size()) {
    throw LpError(ErrorKind::DimensionMismatch, "interior_point has the wrong dimension");
  }
  if (!A_.allFinite() || !b_.allFinite() || !c_.allFinite()) {
    throw LpError(ErrorKind::Parse, "problem data must be finite");
  }
  for (Eigen::Index i = 0; i < A_.rows(); ++i) {
    if (A_.row(i).norm() == 0.0) {
      throw LpError(ErrorKind::ZeroConstraintRow, "zero constraint row " + std::to_string(i));
    }
  }
  c_norm_ = c_.norm();
  if (c_norm_ == 0.0) throw LpError(ErrorKind::ZeroObjective, "zero objective gradient");

  c_dots_ = A_ * c_;
  recessive_ = recessive_indices(A_, c_);
}

bool LpProblem::operator==(const LpProblem& other) const {
  if (A_.rows() != other.A_.rows() || A_.cols() != other.A_.cols()) return false;
  if (A_ != other.A_ || b_ != other.b_ || c_ != other.c_) return false;
  if (interior_.has_value() != other.interior_.has_value()) return false;
  return !interior_ || *interior_ == *other.interior_;
}

IndexSet recessive_indices(const Eigen::MatrixXd& A, const Vector& c) {
  IndexSet out;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    if (A.row(i).dot(c) > 0.0) out.push_back(static_cast<Index>(i));
  }
  return out;
}

IndexSet recessive_indices(const LpProblem& p) { return p.recessive(); }

bool is_feasible(const LpProblem& p, const Point& x, const Tolerances& tol) {
  if (x.size() != static_cast<Eigen::Index>(p.n())) {
    throw LpError(ErrorKind::DimensionMismatch, "point has the wrong dimension");
  }
  for (Index i = 0; i < p.m(); ++i) {
    if (p.residual(i, x) > tol.feas) return false;
  }
  return true;
}

IndexSet active_set(const LpProblem& p, const Point& x, const Tolerances& tol) {
  if (x.size() != static_cast<Eigen::Index>(p.n())) {
    throw LpError(ErrorKind::DimensionMismatch, "point has the wrong dimension");
  }
  IndexSet out;
  for (Index i = 0; i < p.m(); ++i) {
    if (std::abs(p.residual(i, x)) <= tol.active_band(p.b()[static_cast<Eigen::Index>(i)])) {
      out.push_back(i);
    }
  }
  return out;
}

namespace {

Eigen::VectorXd read_vector(const nlohmann::json& j, const char* key, std::size_t expected) {
  if (!j.contains(key)) throw LpError(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw LpError(ErrorKind::Parse, std::string("\"") + key + "\" must be an array");
  if (arr.size() != expected) {
    throw LpError(ErrorKind::DimensionMismatch,
                  std::string("\"") + key + "\" has " + std::to_string(arr.size()) +
                      " entries, expected " + std::to_string(expected));
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    if (!arr[i].is_number()) throw LpError(ErrorKind::Parse, std::string("\"") + key + "\" must hold numbers");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

std::size_t read_count(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw LpError(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw LpError(ErrorKind::Parse, std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

LpProblem parse_problem(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LpError(ErrorKind::Parse, std::string("malformed problem file: ") + e.what());
  }
  if (!j.is_object()) throw LpError(ErrorKind::Parse, "problem file must hold a JSON object");

  const std::size_t n = read_count(j, "n");
  const std::size_t m = read_count(j, "m");
  if (m <= 1) throw LpError(ErrorKind::TooFewConstraints, "at least two constraints are required (m > 1)");

  if (!j.contains("A") || !j.at("A").is_array()) throw LpError(ErrorKind::Parse, "\"A\" must be an array of rows");
  const auto& rows = j.at("A");
  if (rows.size() != m) {
    throw LpError(ErrorKind::DimensionMismatch,
                  "\"A\" has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(m));
  }
  Eigen::MatrixXd A(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw LpError(ErrorKind::DimensionMismatch, "row " + std::to_string(i) + " of \"A\" must have " +
                                                      std::to_string(n) + " entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!row[k].is_number()) throw LpError(ErrorKind::Parse, "\"A\" must hold numbers");
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k].get<double>();
    }
  }
  Eigen::VectorXd b = read_vector(j, "b", m);
  Eigen::VectorXd c = read_vector(j, "c", n);
  std::optional<Point> interior;
  if (j.contains("interior_point") && !j.at("interior_point").is_null()) {
    interior = read_vector(j, "interior_point", n);
  }
  return LpProblem(std::move(A), std::move(b), std::move(c), std::move(interior));
}

LpProblem gen_random(Index n, Index m_cuts, std::uint64_t seed) {
  if (n < 2) throw LpError(ErrorKind::InvalidArgument, "gen_random needs n >= 2");
  constexpr double kUpper = 10.0;
  const auto nn = static_cast<Eigen::Index>(n);
  const auto m = static_cast<Eigen::Index>(2 * n + m_cuts);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> margin(0.5, 4.0);

  auto unit = [&] {
    Eigen::VectorXd v(nn);
    do {
      for (Eigen::Index k = 0; k < nn; ++k) v[k] = gauss(rng);
    } while (v.norm() < 1e-3);
    return Eigen::VectorXd(v / v.norm());
  };

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, nn);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  for (Eigen::Index k = 0; k < nn; ++k) {
    A(2 * k, k) = 1.0;
    b[2 * k] = kUpper;
    A(2 * k + 1, k) = -1.0;
    b[2 * k + 1] = 0.0;
  }
  const Eigen::VectorXd center = Eigen::VectorXd::Constant(nn, kUpper / 2);
  for (Eigen::Index i = 2 * nn; i < m; ++i) {
    const Eigen::VectorXd a = unit();
    A.row(i) = a.transpose();
    b[i] = a.dot(center) + margin(rng);
  }
  Eigen::VectorXd c = unit();
  return LpProblem(std::move(A), std::move(b), std::move(c), center);
}

}  // namespace smm
