#include "smm/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace smm {

namespace {

nlohmann::json vec(const Eigen::VectorXd& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

nlohmann::json to_json(const LpProblem& p) {
  nlohmann::json A = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.A().rows(); ++i) A.push_back(vec(p.A().row(i).transpose()));
  nlohmann::json j = {{"n", p.n()}, {"m", p.m()}, {"A", std::move(A)}, {"b", vec(p.b())}, {"c", vec(p.c())}};
  if (p.interior_point()) j["interior_point"] = vec(*p.interior_point());
  return j;
}

nlohmann::json to_json(const IterationRecord& rec) {
  return {
      {"k", rec.k},
      {"u", vec(rec.u)},
      {"v", vec(rec.v)},
      {"w", vec(rec.w)},
      {"d", vec(rec.d)},
      {"lambda_max", rec.lambda_max},
      {"r_used", rec.r_used},
      {"gain", rec.gain},
      {"active_before", rec.active_before},
      {"active_after", rec.active_after},
      {"shrink_count", rec.shrink_count},
      {"common_hyperplane", rec.common_hyperplane ? nlohmann::json(*rec.common_hyperplane) : nlohmann::json()},
      {"feasible_restricted", rec.feasible_restricted},
      {"reaches_w", rec.reaches_w},
  };
}

nlohmann::json summary_json(const Solution& s) {
  return {
      {"x", vec(s.x)},
      {"objective", s.objective},
      {"status", to_string(s.status)},
      {"iterations", s.iterations},
  };
}

LpProblem read_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LpError(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

void write_problem_file(const LpProblem& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LpError(ErrorKind::Io, "cannot write '" + path + "'");
  out << to_json(p).dump(2) << '\n';
  if (!out) throw LpError(ErrorKind::Io, "write to '" + path + "' failed");
}

void write_trace(std::ostream& out, const Solution& s) {
  for (const auto& rec : s.trace) out << to_json(rec).dump() << '\n';
  out << summary_json(s).dump() << '\n';
}

}  // namespace smm
