#include "fbsplit/runner.hpp"

#include "fbsplit/trace_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace fbsplit {

namespace {

std::string output_dir_for(const RunConfig& config) {
    if (const char* env = std::getenv("FBSPLIT_OUTPUT_DIR"); env && *env) return env;
    return config.output_dir;
}

std::string certificate_block(const Certificate& c) {
    std::ostringstream os;
    os << "certificate: " << c.name << '\n'
       << "passed: " << (c.passed ? "yes" : "no") << '\n'
       << "tolerance: " << format_double17(c.tolerance) << '\n'
       << "worst_margin: " << format_double17(c.worst_margin) << '\n'
       << "worst_index: " << c.worst_index << '\n'
       << "details: " << c.details << '\n';
    return os.str();
}

struct CertificateInputs {
    std::optional<ReferenceSolution> reference;
    double alpha_floor = 0.0;
    double dist0 = 0.0;
};

Certificate dispatch_certificate(const CertificateRequest& req, const SolverTrace& trace,
                                 const CompositeProblem& problem, const RunConfig& config,
                                 CertificateInputs& inputs) {
    auto reference = [&]() -> const ReferenceSolution& {
        if (!inputs.reference) {
            inputs.reference = reference_solution(problem);
        }
        return *inputs.reference;
    };
    const Method method = config.solver.method;

    Certificate cert;
    if (req.name == "descent") {
        cert = certify_descent(trace, method, config.solver.params.delta);
    } else if (req.name == "fejer") {
        const auto& ref = reference();
        cert = certify_fejer(trace, ref.x_star, req.mode.value_or(FejerMode::Fejer));
        cert.details += "; x* from " + ref.provenance;
    } else if (req.name == "rate_1k") {
        const auto& ref = reference();
        cert = certify_rate_1k(trace, ref.f_star, inputs.alpha_floor, inputs.dist0);
        cert.details += "; f* from " + ref.provenance;
    } else if (req.name == "rate_accelerated") {
        const auto& ref = reference();
        cert = certify_rate_accelerated(trace, ref.f_star, inputs.dist0,
                                        config.solver.params.sigma);
        cert.details += "; f* from " + ref.provenance;
    } else if (req.name == "linear_rate") {
        const auto& ref = reference();
        cert = certify_linear_rate(trace, ref.x_star, *problem.smooth.strong_convexity,
                                   inputs.alpha_floor);
        cert.details += "; x* from " + ref.provenance;
    } else if (req.name == "residual_decay") {
        cert = certify_residual_decay(trace);
    } else if (req.name == "distance_ratio") {
        const auto& ref = reference();
        cert = certify_distance_ratio(trace, ref.x_star, *req.lambda, req.sup_bound);
        cert.details += "; x* from " + ref.provenance;
    } else if (req.name == "stepsize_floor") {
        cert = certify_stepsize_floor(trace, *problem.smooth.lipschitz_constant,
                                      config.solver.params, method);
    } else {
        throw ConfigError("unknown certificate '" + req.name + "'");
    }
    return cert;
}

}  // namespace

RunResult run(const RunConfig& config) {
    const CompositeProblem problem = validate_run_config(config);
    const Vector x0 = starting_point(config, problem);
    const std::string out_dir = output_dir_for(config);
    std::filesystem::create_directories(out_dir);

    RunResult result;
    result.trace = solve(problem, config.solver, x0);
    const SolverTrace& trace = result.trace;
    const bool solve_ok = trace.termination == Termination::ResidualTolerance ||
                          trace.termination == Termination::MaxIterations;

    // Trace file.
    const bool csv = config.trace_format == RunConfig::TraceFormat::Csv;
    const std::string trace_path = out_dir + (csv ? "/trace.csv" : "/trace.json");
    write_file(trace_path, csv ? trace_to_csv(trace) : trace_to_json(trace).dump(2) + "\n");
    result.files_written.push_back(trace_path);

    // Certificates (skipped when the solve failed; the partial trace is kept).
    CertificateInputs inputs;
    bool all_passed = true;
    if (solve_ok && !config.certificates.empty()) {
        inputs.alpha_floor = min_stepsize(trace);
        bool needs_reference = false;
        for (const auto& req : config.certificates) {
            if (req.name == "fejer" || req.name == "rate_1k" || req.name == "rate_accelerated" ||
                req.name == "linear_rate" || req.name == "distance_ratio") {
                needs_reference = true;
            }
        }
        if (needs_reference) {
            inputs.reference = reference_solution(problem);
            inputs.dist0 = stable_norm(x0 - inputs.reference->x_star);
        }
        for (const auto& req : config.certificates) {
            Certificate cert = dispatch_certificate(req, trace, problem, config, inputs);
            all_passed = all_passed && cert.passed;
            result.certificates.push_back(std::move(cert));
        }
    }

    // Certificate report.
    std::ostringstream report;
    for (const auto& cert : result.certificates) report << certificate_block(cert) << '\n';
    if (result.certificates.empty()) {
        report << (solve_ok ? "no certificates requested\n"
                            : "certificates skipped: solver failed\n");
    }
    const std::string report_path = out_dir + "/report.txt";
    write_file(report_path, report.str());
    result.files_written.push_back(report_path);

    // Summary.
    const auto& last = trace.records.back();
    std::ostringstream summary;
    summary << "method: " << to_string(config.solver.method) << '\n'
            << "termination: " << to_string(trace.termination) << '\n'
            << "iterations: " << trace.records.size() << '\n'
            << "final_objective: " << format_double17(objective_value(problem, trace.final_point))
            << '\n'
            << "final_residual: " << format_double17(last.residual_norm) << '\n'
            << "cum_prox: " << last.cum_prox << '\n'
            << "cum_grad: " << last.cum_grad << '\n'
            << "cum_f: " << last.cum_f << '\n'
            << "certificates_passed: "
            << std::count_if(result.certificates.begin(), result.certificates.end(),
                             [](const Certificate& c) { return c.passed; })
            << "/" << result.certificates.size() << '\n';
    const std::string summary_path = out_dir + "/summary.txt";
    write_file(summary_path, summary.str());
    result.files_written.push_back(summary_path);

    result.exit_status = (solve_ok && all_passed) ? 0 : 1;
    return result;
}

CompareResult compare(const std::vector<RunConfig>& configs) {
    if (configs.empty()) throw ConfigError("compare: needs at least one configuration");
    for (const auto& c : configs) {
        if (!(c.problem == configs.front().problem)) {
            throw ConfigError("compare: all configurations must share one problem (including seed)");
        }
    }

    const CompositeProblem problem = validate_run_config(configs.front());
    const ReferenceSolution ref = reference_solution(problem);

    CompareResult result;
    std::ostringstream table;
    table << "method,iterations,cum_prox,cum_grad,cum_f,final_gap\n";
    for (const auto& config : configs) {
        validate_run_config(config);
        const Vector x0 = starting_point(config, problem);
        const SolverTrace trace = solve(problem, config.solver, x0);
        const auto& last = trace.records.back();
        CompareRow row;
        row.method = to_string(config.solver.method);
        row.iterations = trace.records.size();
        row.cum_prox = last.cum_prox;
        row.cum_grad = last.cum_grad;
        row.cum_f = last.cum_f;
        row.final_gap = objective_value(problem, trace.final_point) - ref.f_star;
        table << row.method << ',' << row.iterations << ',' << row.cum_prox << ',' << row.cum_grad
              << ',' << row.cum_f << ',' << format_double17(row.final_gap) << '\n';
        result.rows.push_back(std::move(row));
    }

    const std::string out_dir = output_dir_for(configs.front());
    std::filesystem::create_directories(out_dir);
    result.table_path = out_dir + "/comparison.csv";
    write_file(result.table_path, table.str());
    return result;
}

}  // namespace fbsplit
