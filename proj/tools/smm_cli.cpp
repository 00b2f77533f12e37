// Command-line front end: solve, verify, vertices, image, dataset, gen.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smm/image.hpp"
#include "smm/io.hpp"
#include "smm/oracle.hpp"
#include "smm/projection.hpp"
#include "smm/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitIncomplete = 2;
constexpr int kExitTooLarge = 3;

struct SolveFlags {
  std::optional<double> eps, eps_rel, r0, r_min, tol_active, tol_feas;
  std::optional<std::size_t> max_iter;
  std::string argmax = "exact";
  int eta = 5;
  std::string kind = "cruciform";
  std::string start;
  bool auto_start = false;
};

struct Options {
  std::string problem;
  std::string corpus;
  std::string trace;
  std::string output;
  std::string at;
  double radius = 0.1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t n = 2, m_cuts = 0;
  bool pretty = false;
  SolveFlags s;
};

smm::Point parse_point(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw smm::LpError(smm::ErrorKind::InvalidArgument, "bad coordinate '" + item + "' in '" + text + "'");
    }
  }
  return Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

json vec(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

void add_solve_flags(CLI::App* cmd, SolveFlags& s) {
  cmd->add_option("--eps", s.eps, "Stop when the gain <c, w-u> is at most this (objective units)");
  cmd->add_option("--eps-rel", s.eps_rel, "Relative threshold, scaled by ||c|| (1 + |<c, u0>|)")->excludes("--eps");
  cmd->add_option("--r0", s.r0, "Initial disk radius");
  cmd->add_option("--r-min", s.r_min, "Smallest disk radius");
  cmd->add_option("--max-iter", s.max_iter, "Iteration cap (default 10 m + 100)");
  cmd->add_option("--argmax", s.argmax, "Disk argmax: exact or field")->check(CLI::IsMember({"exact", "field"}));
  cmd->add_option("--eta", s.eta, "Points per axis of the receptive field")->check(CLI::PositiveNumber);
  cmd->add_option("--kind", s.kind, "Receptive field: lattice or cruciform")
      ->check(CLI::IsMember({"lattice", "cruciform"}));
  cmd->add_option("--start", s.start, "Feasible start point x1,x2,...");
  cmd->add_flag("--auto-start", s.auto_start, "Start from the average of the enumerated vertices")
      ->excludes("--start");
  cmd->add_option("--tol-active", s.tol_active, "Hyperplane membership tolerance");
  cmd->add_option("--tol-feas", s.tol_feas, "Feasibility tolerance");
}

smm::Point vertex_average(const smm::LpProblem& p, const smm::Tolerances& tol) {
  const auto vs = smm::enumerate_vertices(p, tol);
  if (vs.vertices.empty()) throw smm::LpError(smm::ErrorKind::Infeasible, "no feasible vertex to start from");
  smm::Point sum = smm::Point::Zero(static_cast<Eigen::Index>(p.n()));
  for (const auto& v : vs.vertices) sum += v;
  return sum / static_cast<double>(vs.vertices.size());
}

smm::Tolerances make_tolerances(const SolveFlags& s) {
  smm::Tolerances tol;
  if (s.tol_active) tol.active = *s.tol_active;
  if (s.tol_feas) tol.feas = *s.tol_feas;
  tol.validate();
  return tol;
}

smm::Point resolve_start(const smm::LpProblem& p, const SolveFlags& s, const smm::Tolerances& tol) {
  if (!s.start.empty()) return parse_point(s.start);
  if (!s.auto_start && p.interior_point()) return *p.interior_point();
  return vertex_average(p, tol);
}

smm::SolverConfig make_config(const smm::LpProblem& p, const SolveFlags& s, const smm::Point& start) {
  smm::SolverConfig cfg;
  cfg.tol = make_tolerances(s);
  if (s.r0) cfg.r0 = *s.r0;
  if (s.r_min) cfg.r_min = *s.r_min;
  if (s.max_iter) cfg.max_iter = *s.max_iter;
  cfg.argmax.method = s.argmax == "field" ? smm::ArgmaxMethod::Field : smm::ArgmaxMethod::Exact;
  cfg.argmax.eta = s.eta;
  cfg.argmax.kind = smm::parse_field_kind(s.kind);
  if (s.eps) cfg.eps_f = *s.eps;
  if (s.eps_rel) {
    if (start.size() != static_cast<Eigen::Index>(p.n())) {
      throw smm::LpError(smm::ErrorKind::DimensionMismatch, "start point has the wrong dimension");
    }
    const smm::Point u0 = smm::lift_to_surface(p, start, cfg.tol);
    cfg.eps_f = *s.eps_rel * p.c_norm() * (1.0 + std::abs(p.objective(u0)));
  }
  cfg.validate();
  return cfg;
}

smm::Solution run_solve(const smm::LpProblem& p, const SolveFlags& s) {
  const smm::Tolerances tol = make_tolerances(s);
  const smm::Point start = resolve_start(p, s, tol);
  return smm::solve(p, start, make_config(p, s, start));
}

int status_exit(smm::SolveStatus st) {
  switch (st) {
    case smm::SolveStatus::Optimal: return kExitOk;
    case smm::SolveStatus::Unbounded: return kExitError;
    default: return kExitIncomplete;
  }
}

void emit(const json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << '\n'; }

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw smm::LpError(smm::ErrorKind::Io, "cannot write '" + path + "'");
  return file;
}

int cmd_solve(const Options& o) {
  const auto p = smm::read_problem_file(o.problem);
  const auto sol = run_solve(p, o.s);
  if (!o.trace.empty()) {
    std::ofstream out;
    smm::write_trace(open_output(o.trace, out), sol);
  }
  if (o.pretty) {
    std::cout << "status      " << smm::to_string(sol.status) << '\n'
              << "objective   " << sol.objective << '\n'
              << "x           " << vec(sol.x).dump() << '\n'
              << "iterations  " << sol.iterations << '\n'
              << "revisits    " << sol.hyperplane_revisits << '\n';
  } else {
    emit(smm::summary_json(sol), false);
  }
  return status_exit(sol.status);
}

// Returns the exit code for one instance and appends its result line.
int verify_one(const std::string& path, const SolveFlags& s, json& result) {
  result["problem"] = path;
  try {
    const auto p = smm::read_problem_file(path);
    const auto oracle = smm::brute_force_optimum(p, make_tolerances(s));
    const auto sol = run_solve(p, s);
    const double diff = std::abs(sol.objective - oracle.f_star);
    const bool pass = sol.status == smm::SolveStatus::Optimal && diff <= 1e-6 * (1.0 + std::abs(oracle.f_star));
    result["objective"] = sol.objective;
    result["f_star"] = oracle.f_star;
    result["status"] = smm::to_string(sol.status);
    result["result"] = pass ? "PASS" : "FAIL";
    return pass ? kExitOk : kExitError;
  } catch (const smm::LpError& e) {
    result["result"] = "ERROR";
    result["error"] = e.what();
    return e.kind() == smm::ErrorKind::TooLarge ? kExitTooLarge : kExitError;
  }
}

int cmd_verify(const Options& o) {
  std::vector<std::string> files;
  if (!o.corpus.empty()) {
    if (!fs::is_directory(o.corpus)) throw smm::LpError(smm::ErrorKind::Io, "'" + o.corpus + "' is not a directory");
    for (const auto& e : fs::directory_iterator(o.corpus)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
  } else if (!o.problem.empty()) {
    files.push_back(o.problem);
  } else {
    throw smm::LpError(smm::ErrorKind::InvalidArgument, "verify needs a problem file or --corpus");
  }

  int code = kExitOk;
  std::size_t passed = 0;
  for (const auto& f : files) {
    json result;
    const int rc = verify_one(f, o.s, result);
    if (rc == kExitOk) ++passed;
    if (rc == kExitTooLarge && code != kExitError) code = kExitTooLarge;
    if (rc == kExitError) code = kExitError;
    if (o.pretty) {
      std::cout << result["result"].get<std::string>() << "  " << f;
      if (result.contains("objective")) {
        std::cout << "  objective " << result["objective"].get<double>() << "  oracle "
                  << result["f_star"].get<double>();
      }
      if (result.contains("error")) std::cout << "  " << result["error"].get<std::string>();
      std::cout << '\n';
    } else {
      emit(result, false);
    }
    if (rc == kExitTooLarge) std::cerr << "smm: " << f << ": " << result["error"].get<std::string>() << '\n';
  }
  if (files.size() > 1) {
    if (o.pretty) {
      std::cout << passed << "/" << files.size() << " passed\n";
    } else {
      emit({{"passed", passed}, {"total", files.size()}}, false);
    }
  }
  return code;
}

int cmd_vertices(const Options& o) {
  const auto p = smm::read_problem_file(o.problem);
  const auto vs = smm::enumerate_vertices(p, make_tolerances(o.s));
  json out = {{"count", vs.vertices.size()}, {"vertices", json::array()}, {"active_sets", vs.active_sets}};
  for (const auto& v : vs.vertices) out["vertices"].push_back(vec(v));
  emit(out, o.pretty);
  return kExitOk;
}

int cmd_image(const Options& o) {
  const auto p = smm::read_problem_file(o.problem);
  const smm::Point at = parse_point(o.at);
  const auto img = smm::local_image(p, at, o.s.eta, o.radius, smm::parse_field_kind(o.s.kind));
  json points = json::array();
  for (const auto& z : img.field.points) points.push_back(vec(z));
  emit({{"kind", smm::to_string(img.field.kind)},
        {"eta", img.field.eta},
        {"r", img.field.r},
        {"center", vec(at)},
        {"shape", img.shape},
        {"values", img.values},
        {"points", std::move(points)}},
       o.pretty);
  return kExitOk;
}

// One record at every iterate of the solve path, ending with the final point.
int cmd_dataset(const Options& o) {
  const auto p = smm::read_problem_file(o.problem);
  const auto sol = run_solve(p, o.s);
  std::vector<smm::Point> at;
  for (const auto& rec : sol.trace) at.push_back(rec.u);
  at.push_back(sol.x);

  const auto kind = smm::parse_field_kind(o.s.kind);
  const std::optional<std::uint64_t> seed = o.seed_given ? std::optional<std::uint64_t>(o.seed) : std::nullopt;
  std::ofstream file;
  std::ostream& out = open_output(o.output, file);
  for (const auto& u : at) {
    const auto img = smm::local_image(p, u, o.s.eta, o.radius, kind);
    out << smm::to_json(smm::emit_training_record(p, u, img, seed)).dump() << '\n';
  }
  return kExitOk;
}

int cmd_gen(const Options& o) {
  const auto p = smm::gen_random(o.n, o.m_cuts, o.seed);
  std::ofstream file;
  std::ostream& out = open_output(o.output, file);
  out << smm::to_json(p).dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface movement LP solver"};
  app.require_subcommand(1, 1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Solve a problem file");
  solve->add_option("problem", o.problem, "Problem file (JSON)")->required();
  add_solve_flags(solve, o.s);
  solve->add_option("--trace", o.trace, "Write the iteration trace as JSONL");
  solve->add_flag("--pretty", o.pretty, "Human-readable summary");

  auto* verify = app.add_subcommand("verify", "Compare solve with brute-force vertex enumeration");
  verify->add_option("problem", o.problem, "Problem file (JSON)");
  verify->add_option("--corpus", o.corpus, "Verify every *.json file in a directory, in filename order");
  add_solve_flags(verify, o.s);
  verify->add_flag("--pretty", o.pretty, "Human-readable output");

  auto* vertices = app.add_subcommand("vertices", "List the vertices of the feasible polytope");
  vertices->add_option("problem", o.problem, "Problem file (JSON)")->required();
  vertices->add_option("--tol-feas", o.s.tol_feas, "Feasibility tolerance");
  vertices->add_flag("--pretty", o.pretty, "Indented JSON");

  auto* image = app.add_subcommand("image", "Local image around a point");
  image->add_option("problem", o.problem, "Problem file (JSON)")->required();
  image->add_option("--at", o.at, "Center point x1,x2,...")->required();
  image->add_option("--eta", o.s.eta, "Points per axis")->check(CLI::PositiveNumber);
  image->add_option("--kind", o.s.kind, "lattice or cruciform")->check(CLI::IsMember({"lattice", "cruciform"}));
  image->add_option("--r", o.radius, "Field radius");
  image->add_flag("--pretty", o.pretty, "Indented JSON");

  auto* dataset = app.add_subcommand("dataset", "Labeled local images along the solve path (JSONL)");
  dataset->add_option("problem", o.problem, "Problem file (JSON)")->required();
  add_solve_flags(dataset, o.s);
  dataset->add_option("--r", o.radius, "Field radius");
  dataset->add_option("--seed", o.seed, "Seed recorded in each record's metadata");
  dataset->add_option("-o,--output", o.output, "Output file (default standard output)");

  auto* gen = app.add_subcommand("gen", "Generate a random bounded problem");
  gen->add_option("-n", o.n, "Dimension")->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
  gen->add_option("-m", o.m_cuts, "Number of random cuts");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("-o,--output", o.output, "Output file (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }
  o.seed_given = dataset->count("--seed") > 0;

  try {
    if (*solve) return cmd_solve(o);
    if (*verify) return cmd_verify(o);
    if (*vertices) return cmd_vertices(o);
    if (*image) return cmd_image(o);
    if (*dataset) return cmd_dataset(o);
    if (*gen) return cmd_gen(o);
  } catch (const smm::LpError& e) {
    std::cerr << "smm: " << smm::to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == smm::ErrorKind::TooLarge ? kExitTooLarge : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "smm: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
