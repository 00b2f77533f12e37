#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "smm/model.hpp"
#include "smm/solver.hpp"

namespace smm {

nlohmann::json to_json(const LpProblem& p);
nlohmann::json to_json(const IterationRecord& rec);
nlohmann::json summary_json(const Solution& s);

LpProblem read_problem_file(const std::string& path);
void write_problem_file(const LpProblem& p, const std::string& path);

// One IterationRecord per line, then the summary line.
void write_trace(std::ostream& out, const Solution& s);

}  // namespace smm
