#pragma once

#include "fbsplit/solvers.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace fbsplit {

// 17 significant digits: shortest representation that round-trips any double.
std::string format_double17(double v);

// Columns, in order: k, objective, stepsize, residual, step_norm, ls_trials,
// cum_prox, cum_grad, cum_f, dist_to_solution (empty when unknown), t_k
// (empty unless the accelerated method produced the trace).
std::string trace_to_csv(const SolverTrace& trace);

nlohmann::json trace_to_json(const SolverTrace& trace);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace fbsplit
