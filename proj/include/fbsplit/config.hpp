#pragma once

#include "fbsplit/diagnostics.hpp"
#include "fbsplit/problems.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace fbsplit {

// Invalid or unsatisfiable configuration; maps to exit status 2, before any
// solving happens.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CertificateRequest {
    std::string name;  // see certificate_names()
    std::optional<FejerMode> mode;       // fejer / quasi_fejer shorthand fills this
    std::optional<double> lambda;        // distance_ratio
    std::optional<double> sup_bound;     // distance_ratio, optional assertion
    bool operator==(const CertificateRequest&) const = default;
};

struct RunConfig {
    ProblemSpec problem;
    SolverConfig solver;
    std::vector<double> x0;   // explicit start; empty -> keyword applies
    std::string x0_keyword = "zeros";  // "zeros" | "ones", projected onto dom g
    std::vector<CertificateRequest> certificates;
    std::string output_dir = "out";
    enum class TraceFormat { Csv, Json } trace_format = TraceFormat::Csv;
};

const std::vector<std::string>& certificate_names();

// Strict parser: unknown keys are errors, not warnings -- a silently ignored
// typo in sigma/theta/delta would corrupt an experiment.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

// Builds the problem, checks parameter invariants and that every requested
// certificate's inputs are satisfiable by the chosen problem family and
// solver method. Returns the built problem. Throws ConfigError.
CompositeProblem validate_run_config(const RunConfig& config);

// The starting point the config describes (explicit or keyword, projected
// onto dom g when a projection is available).
Vector starting_point(const RunConfig& config, const CompositeProblem& problem);

}  // namespace fbsplit
