#pragma once

#include <map>
#include <string>

#include "blowlab/sweep.hpp"
#include "blowlab/wave_solver.hpp"

namespace blowlab {

// Self-describing key/value text: one `key = value` per line, `#` comments.
std::map<std::string, std::string> parse_kv_file(const std::string& path);
std::map<std::string, std::string> parse_kv_text(const std::string& text);

// Builds a solver run or a sweep plan from parsed keys. Unknown keys raise
// std::runtime_error so typos never pass silently.
SolverConfig solver_config_from_kv(const std::map<std::string, std::string>& kv);
SweepPlan sweep_plan_from_kv(const std::map<std::string, std::string>& kv);

} // namespace blowlab
