#include "fbsplit/runner.hpp"
#include "fbsplit/trace_io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int cmd_run(const std::string& config_path) {
    const fbsplit::RunConfig config = fbsplit::load_run_config(config_path);
    const fbsplit::RunResult result = fbsplit::run(config);
    for (const auto& f : result.files_written) std::cout << "wrote " << f << '\n';
    std::cout << "termination: " << fbsplit::to_string(result.trace.termination) << '\n';
    for (const auto& cert : result.certificates) {
        std::cout << (cert.passed ? "[pass] " : "[FAIL] ") << cert.name << " (worst margin "
                  << fbsplit::format_double17(cert.worst_margin) << " at k=" << cert.worst_index
                  << ")\n";
    }
    return result.exit_status;
}

int cmd_compare(const std::vector<std::string>& config_paths) {
    std::vector<fbsplit::RunConfig> configs;
    configs.reserve(config_paths.size());
    for (const auto& p : config_paths) configs.push_back(fbsplit::load_run_config(p));
    const fbsplit::CompareResult result = fbsplit::compare(configs);
    std::cout << "wrote " << result.table_path << '\n';
    for (const auto& row : result.rows) {
        std::cout << row.method << ": iterations=" << row.iterations << " prox=" << row.cum_prox
                  << " grad=" << row.cum_grad << " f=" << row.cum_f
                  << " final_gap=" << fbsplit::format_double17(row.final_gap) << '\n';
    }
    return 0;
}

void cmd_list_problems() {
    std::cout << "lasso                      f = 0.5||Ax-b||^2, g = lambda||x||_1"
                 "  [seeded A,b or explicit; metadata: L; 1-D also x*, f*]\n"
              << "ppower_nonneg              f = sum |x_i|^{1+p}/(1+p), p in (0,1), g = "
                 "indicator(x>=0)  [metadata: x*=0, f*=0; no global L]\n"
              << "box_least_squares          f = 0.5||Ax-b||^2, g = indicator(box)  [metadata: L]\n"
              << "strongly_convex_quadratic  f = 0.5 x'Qx - b'x, Q>0 diagonal, g = 0 or "
                 "(w/2)||x||^2  [metadata: L, mu, x*, f*]\n"
              << "exp_unbounded              f = exp(x) in 1-D, g = 0  [empty solution set, "
                 "infimum 0; no L]\n";
}

void cmd_list_certificates() {
    std::cout
        << "descent          per-iteration decrease inequality (curvature or relaxed form)\n"
        << "fejer            distances to x* nonincreasing (mode: fejer | quasi_fejer)\n"
        << "quasi_fejer      shorthand for fejer with mode=quasi_fejer\n"
        << "rate_1k          sublinear value bound gap_k <= C/k from the observed stepsize floor\n"
        << "rate_accelerated value bound gap_k <= C/(k+1)^2 for the accelerated method\n"
        << "linear_rate      contraction ||x^{k+1}-x*|| <= ||x^k-x*||/sqrt(1+alpha*mu)\n"
        << "residual_decay   sqrt(k)*residual decay proxy at checkpoints N/4, N/2, N\n"
        << "distance_ratio   sup ||x^k-x*||^{1+lambda}/alpha_k over the trace tail "
           "(inputs: lambda, optional sup_bound)\n"
        << "stepsize_floor   accepted stepsizes above the Lipschitz floor\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forward-backward splitting solvers with linesearch certification"};
    app.require_subcommand(1);

    std::string run_config;
    auto* run_cmd = app.add_subcommand("run", "solve one configured problem and certify the trace");
    run_cmd->add_option("config", run_config, "JSON run configuration")->required();

    std::vector<std::string> compare_configs;
    auto* compare_cmd =
        app.add_subcommand("compare", "tabulate several methods on one shared problem");
    compare_cmd->add_option("configs", compare_configs, "JSON run configurations")->required();

    auto* list_problems = app.add_subcommand("list-problems", "show the problem catalog");
    auto* list_certs = app.add_subcommand("list-certificates", "show available certificates");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(run_config);
        if (compare_cmd->parsed()) return cmd_compare(compare_configs);
        if (list_problems->parsed()) cmd_list_problems();
        if (list_certs->parsed()) cmd_list_certificates();
        return 0;
    } catch (const fbsplit::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
