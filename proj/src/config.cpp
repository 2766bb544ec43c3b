#include "fbsplit/config.hpp"

#include "fbsplit/trace_io.hpp"

#include <algorithm>
#include <set>

namespace fbsplit {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError("config: '" + where + "' must be an object");
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("config: unknown key '" + item.key() + "' in " + where);
        }
    }
}

std::vector<double> number_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError("config: '" + where + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError("config: '" + where + "' must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

ProblemSpec parse_problem(const json& j) {
    check_keys(j,
               {"family", "dimension", "seed", "rows", "design", "rhs", "l1_weight", "p",
                "box_lower", "box_upper", "quad_diag", "quad_min", "quad_max", "quad_g_weight"},
               "problem");
    if (!j.contains("family")) throw ConfigError("config: problem.family is required");
    ProblemSpec spec;
    spec.family = problem_family_from_string(j.at("family").get<std::string>());
    if (j.contains("dimension")) spec.dimension = j.at("dimension").get<int>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("rows")) spec.rows = j.at("rows").get<int>();
    if (j.contains("design")) spec.design = number_array(j.at("design"), "problem.design");
    if (j.contains("rhs")) spec.rhs = number_array(j.at("rhs"), "problem.rhs");
    if (j.contains("l1_weight")) spec.l1_weight = j.at("l1_weight").get<double>();
    if (j.contains("p")) spec.p = j.at("p").get<double>();
    if (j.contains("box_lower")) spec.box_lower = j.at("box_lower").get<double>();
    if (j.contains("box_upper")) spec.box_upper = j.at("box_upper").get<double>();
    if (j.contains("quad_diag")) spec.quad_diag = number_array(j.at("quad_diag"), "problem.quad_diag");
    if (j.contains("quad_min")) spec.quad_min = j.at("quad_min").get<double>();
    if (j.contains("quad_max")) spec.quad_max = j.at("quad_max").get<double>();
    if (j.contains("quad_g_weight")) spec.quad_g_weight = j.at("quad_g_weight").get<double>();
    return spec;
}

SolverConfig parse_solver(const json& j) {
    check_keys(j,
               {"method", "sigma", "theta", "delta", "max_backtracks", "fixed_stepsize",
                "residual_tolerance", "max_iterations", "record_iterates"},
               "solver");
    if (!j.contains("method")) throw ConfigError("config: solver.method is required");
    SolverConfig cfg;
    cfg.method = method_from_string(j.at("method").get<std::string>());
    if (j.contains("sigma")) cfg.params.sigma = j.at("sigma").get<double>();
    if (j.contains("theta")) cfg.params.theta = j.at("theta").get<double>();
    if (j.contains("delta")) cfg.params.delta = j.at("delta").get<double>();
    if (j.contains("max_backtracks")) cfg.params.max_backtracks = j.at("max_backtracks").get<int>();
    if (j.contains("fixed_stepsize")) cfg.fixed_stepsize = j.at("fixed_stepsize").get<double>();
    if (j.contains("residual_tolerance")) {
        cfg.residual_tolerance = j.at("residual_tolerance").get<double>();
    }
    if (j.contains("max_iterations")) cfg.max_iterations = j.at("max_iterations").get<int>();
    if (j.contains("record_iterates")) cfg.record_iterates = j.at("record_iterates").get<bool>();
    return cfg;
}

CertificateRequest parse_certificate(const json& j) {
    check_keys(j, {"name", "mode", "lambda", "sup_bound"}, "certificates[]");
    if (!j.contains("name")) throw ConfigError("config: certificate entries need a name");
    CertificateRequest req;
    req.name = j.at("name").get<std::string>();
    const auto& names = certificate_names();
    if (std::find(names.begin(), names.end(), req.name) == names.end()) {
        throw ConfigError("config: unknown certificate '" + req.name + "'");
    }
    if (j.contains("mode")) {
        const std::string mode = j.at("mode").get<std::string>();
        if (req.name != "fejer") {
            throw ConfigError("config: 'mode' applies to the fejer certificate only");
        }
        if (mode == "fejer") {
            req.mode = FejerMode::Fejer;
        } else if (mode == "quasi_fejer") {
            req.mode = FejerMode::QuasiFejer;
        } else {
            throw ConfigError("config: fejer mode must be 'fejer' or 'quasi_fejer'");
        }
    }
    if (j.contains("lambda")) {
        if (req.name != "distance_ratio") {
            throw ConfigError("config: 'lambda' applies to the distance_ratio certificate only");
        }
        req.lambda = j.at("lambda").get<double>();
    }
    if (j.contains("sup_bound")) {
        if (req.name != "distance_ratio") {
            throw ConfigError("config: 'sup_bound' applies to the distance_ratio certificate only");
        }
        req.sup_bound = j.at("sup_bound").get<double>();
    }
    if (req.name == "fejer" && !req.mode) req.mode = FejerMode::Fejer;
    if (req.name == "quasi_fejer") {
        req.name = "fejer";
        req.mode = FejerMode::QuasiFejer;
    }
    return req;
}

}  // namespace

const std::vector<std::string>& certificate_names() {
    static const std::vector<std::string> names = {
        "descent",        "fejer",          "quasi_fejer",    "rate_1k",       "rate_accelerated",
        "linear_rate",    "residual_decay", "distance_ratio", "stepsize_floor"};
    return names;
}

RunConfig parse_run_config(const json& j) {
    try {
        check_keys(j, {"problem", "solver", "x0", "certificates", "output_dir", "trace_format"},
                   "run config");
        if (!j.contains("problem") || !j.contains("solver")) {
            throw ConfigError("config: 'problem' and 'solver' sections are required");
        }
        RunConfig cfg;
        cfg.problem = parse_problem(j.at("problem"));
        cfg.solver = parse_solver(j.at("solver"));
        if (j.contains("x0")) {
            const auto& x0 = j.at("x0");
            if (x0.is_string()) {
                cfg.x0_keyword = x0.get<std::string>();
                if (cfg.x0_keyword != "zeros" && cfg.x0_keyword != "ones") {
                    throw ConfigError("config: x0 keyword must be 'zeros' or 'ones'");
                }
            } else {
                cfg.x0 = number_array(x0, "x0");
            }
        }
        if (j.contains("certificates")) {
            if (!j.at("certificates").is_array()) {
                throw ConfigError("config: 'certificates' must be an array");
            }
            for (const auto& c : j.at("certificates")) {
                cfg.certificates.push_back(parse_certificate(c));
            }
        }
        if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("trace_format")) {
            const std::string fmt = j.at("trace_format").get<std::string>();
            if (fmt == "csv") {
                cfg.trace_format = RunConfig::TraceFormat::Csv;
            } else if (fmt == "json") {
                cfg.trace_format = RunConfig::TraceFormat::Json;
            } else {
                throw ConfigError("config: trace_format must be 'csv' or 'json'");
            }
        }
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RunConfig load_run_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("config: cannot parse " + path + ": " + e.what());
    } catch (const std::runtime_error& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
    return parse_run_config(j);
}

CompositeProblem validate_run_config(const RunConfig& config) {
    CompositeProblem problem;
    try {
        problem = build_problem(config.problem);
        config.solver.validate(problem);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const Method method = config.solver.method;
    const bool is_ls_method =
        method == Method::Method1 || method == Method::Method2 || method == Method::Method3;
    for (const auto& req : config.certificates) {
        auto need = [&](bool ok, const std::string& why) {
            if (!ok) {
                throw ConfigError("config: certificate '" + req.name + "' is unsatisfiable: " + why);
            }
        };
        auto needs_solution = [&] {
            need(problem.solution_exists,
                 "the problem's solution set is empty, so x*/f* cannot be obtained");
        };
        if (req.name == "descent") {
            need(method == Method::Method1 || method == Method::Method2,
                 "applies to the two linesearch methods only");
        } else if (req.name == "fejer") {
            needs_solution();
            need(config.solver.record_iterates, "requires record_iterates");
            need(method == Method::Method1 || method == Method::Method2,
                 "applies to the two linesearch methods only");
        } else if (req.name == "rate_1k") {
            needs_solution();
            need(method == Method::Method1 || method == Method::Method2,
                 "applies to the two linesearch methods only");
        } else if (req.name == "rate_accelerated") {
            needs_solution();
            need(method == Method::Method3, "requires the accelerated method");
        } else if (req.name == "linear_rate") {
            needs_solution();
            need(method == Method::Method1, "requires the curvature method");
            need(config.solver.record_iterates, "requires record_iterates");
            need(problem.smooth.strong_convexity.has_value(),
                 "the problem family provides no strong convexity constant");
        } else if (req.name == "residual_decay") {
            // every solver records residuals
        } else if (req.name == "distance_ratio") {
            needs_solution();
            need(method == Method::Method1, "requires the curvature method");
            need(config.solver.record_iterates, "requires record_iterates");
            need(req.lambda.has_value(), "requires a lambda in [-1,1)");
            need(*req.lambda >= -1.0 && *req.lambda < 1.0, "lambda must lie in [-1,1)");
        } else if (req.name == "stepsize_floor") {
            need(is_ls_method, "applies to linesearch methods only");
            need(problem.smooth.lipschitz_constant.has_value(),
                 "the problem family provides no global Lipschitz constant; for vanishing "
                 "stepsizes use the distance_ratio certificate instead");
        }
    }
    return problem;
}

Vector starting_point(const RunConfig& config, const CompositeProblem& problem) {
    Vector x0;
    if (!config.x0.empty()) {
        if (static_cast<Eigen::Index>(config.x0.size()) != problem.dimension) {
            throw ConfigError("config: x0 dimension does not match the problem");
        }
        x0 = Eigen::Map<const Vector>(config.x0.data(), problem.dimension);
        if (!x0.allFinite()) throw ConfigError("config: x0 must have finite coordinates");
    } else if (config.x0_keyword == "ones") {
        x0 = Vector::Ones(problem.dimension);
    } else {
        x0 = Vector::Zero(problem.dimension);
    }
    if (!problem.nonsmooth.in_domain(x0)) {
        if (problem.nonsmooth.project_domain) {
            x0 = problem.nonsmooth.project_domain(x0);
        } else {
            throw ConfigError("config: x0 lies outside dom g");
        }
    }
    return x0;
}

}  // namespace fbsplit
