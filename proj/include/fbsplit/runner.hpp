#pragma once

#include "fbsplit/config.hpp"

#include <string>
#include <vector>

namespace fbsplit {

struct RunResult {
    int exit_status = 0;  // 0 all certificates passed and the solve succeeded; 1 otherwise
    SolverTrace trace;
    std::vector<Certificate> certificates;
    std::vector<std::string> files_written;
};

// Executes one configured experiment: solve, certify, and persist
//   <output_dir>/trace.{csv|json}   recorded iterations
//   <output_dir>/report.txt        one block per certificate
//   <output_dir>/summary.txt       termination, final objective, oracle totals
// Identical configs (including seeds) produce byte-identical trace files.
// Throws ConfigError (exit status 2 territory) before solving; solver
// failures still write the partial outputs and yield exit status 1.
RunResult run(const RunConfig& config);

struct CompareRow {
    std::string method;
    std::size_t iterations = 0;
    std::int64_t cum_prox = 0;
    std::int64_t cum_grad = 0;
    std::int64_t cum_f = 0;
    double final_gap = 0.0;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    std::string table_path;
};

// Runs several solver configurations against one shared problem (identical
// ProblemSpec including seed, enforced) and tabulates the prox/gradient cost
// trade-off: iterations to termination, cumulative oracle counts, final
// objective gap. The table lands in <output_dir of first config>/comparison.csv.
CompareResult compare(const std::vector<RunConfig>& configs);

}  // namespace fbsplit
