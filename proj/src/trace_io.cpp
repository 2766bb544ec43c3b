#include "fbsplit/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fbsplit {

std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trace_to_csv(const SolverTrace& trace) {
    std::ostringstream os;
    os << "k,objective,stepsize,residual,step_norm,ls_trials,cum_prox,cum_grad,cum_f,"
          "dist_to_solution,t_k\n";
    for (const auto& r : trace.records) {
        os << r.k << ',' << format_double17(r.objective_value) << ','
           << format_double17(r.stepsize) << ',' << format_double17(r.residual_norm) << ','
           << format_double17(r.step_norm) << ',' << r.ls_trials << ',' << r.cum_prox << ','
           << r.cum_grad << ',' << r.cum_f << ',';
        if (r.dist_to_solution) os << format_double17(*r.dist_to_solution);
        os << ',';
        if (r.t_k) os << format_double17(*r.t_k);
        os << '\n';
    }
    return os.str();
}

nlohmann::json trace_to_json(const SolverTrace& trace) {
    nlohmann::json j;
    j["method"] = to_string(trace.config.method);
    j["termination"] = to_string(trace.termination);
    j["final_point"] = std::vector<double>(trace.final_point.data(),
                                           trace.final_point.data() + trace.final_point.size());
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : trace.records) {
        nlohmann::json jr;
        jr["k"] = r.k;
        jr["objective"] = r.objective_value;
        jr["stepsize"] = r.stepsize;
        jr["residual"] = r.residual_norm;
        jr["step_norm"] = r.step_norm;
        jr["ls_trials"] = r.ls_trials;
        jr["cum_prox"] = r.cum_prox;
        jr["cum_grad"] = r.cum_grad;
        jr["cum_f"] = r.cum_f;
        if (r.dist_to_solution) jr["dist_to_solution"] = *r.dist_to_solution;
        if (r.t_k) jr["t_k"] = *r.t_k;
        if (r.x) jr["x"] = std::vector<double>(r.x->data(), r.x->data() + r.x->size());
        recs.push_back(std::move(jr));
    }
    j["records"] = std::move(recs);
    return j;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace fbsplit
