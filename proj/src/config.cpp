#include "blowlab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace blowlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad number for " + key + ": " + v);
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double x = to_double(key, v);
    return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("config: bad boolean for " + key + ": " + v);
}

DataFamily family_from(const std::string& v) {
    if (v == "bump") return DataFamily::Bump;
    if (v == "scaled-bump") return DataFamily::ScaledBump;
    if (v == "uniform") return DataFamily::Uniform;
    throw std::runtime_error("config: unknown data family: " + v);
}

} // namespace

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " has no '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " has an empty key or value");
        kv[key] = value;
    }
    return kv;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_kv_text(buf.str());
}

namespace {

const std::set<std::string> kSolverKeys{
    "kind", "N", "p", "q", "a", "b", "epsilon", "dr", "cfl", "r_max",
    "t_max", "threshold", "richardson", "family", "r0", "f_amp", "g_amp",
    "trace_stride_r", "trace_stride_t", "disable_laplacian",
    "disable_nonlinearity", "keep_traces", "parallel"};

const std::set<std::string> kSweepOnlyKeys{"epsilons", "tol_rel", "workers"};

SolverConfig build_solver(const std::map<std::string, std::string>& kv) {
    SolverConfig cfg;
    for (const auto& [key, value] : kv) {
        if (key == "kind") cfg.spec.kind = kind_from_name(value);
        else if (key == "N") cfg.spec.dim = to_int(key, value);
        else if (key == "p") cfg.spec.p = to_double(key, value);
        else if (key == "q") cfg.spec.q = to_double(key, value);
        else if (key == "a") cfg.spec.a = to_double(key, value);
        else if (key == "b") cfg.spec.b = to_double(key, value);
        else if (key == "epsilon") cfg.epsilon = to_double(key, value);
        else if (key == "dr") cfg.dr = to_double(key, value);
        else if (key == "cfl") cfg.cfl = to_double(key, value);
        else if (key == "r_max") cfg.r_max = to_double(key, value);
        else if (key == "t_max") cfg.t_max = to_double(key, value);
        else if (key == "threshold") cfg.blowup_threshold = to_double(key, value);
        else if (key == "richardson") cfg.richardson = to_bool(key, value);
        else if (key == "family") cfg.data.family = family_from(value);
        else if (key == "r0") cfg.data.r0 = to_double(key, value);
        else if (key == "f_amp") cfg.data.f_amp = to_double(key, value);
        else if (key == "g_amp") cfg.data.g_amp = to_double(key, value);
        else if (key == "trace_stride_r") cfg.trace_stride_r = to_int(key, value);
        else if (key == "trace_stride_t") cfg.trace_stride_t = to_int(key, value);
        else if (key == "disable_laplacian") cfg.disable_laplacian = to_bool(key, value);
        else if (key == "disable_nonlinearity")
            cfg.disable_nonlinearity = to_bool(key, value);
        else if (key == "keep_traces") cfg.keep_traces = to_bool(key, value);
        else if (key == "parallel")
            cfg.exec = to_bool(key, value) ? Exec::Parallel : Exec::Serial;
        else if (!kSweepOnlyKeys.count(key))
            throw std::runtime_error("config: unknown key: " + key);
    }
    return cfg;
}

} // namespace

SolverConfig solver_config_from_kv(const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv)
        if (!kSolverKeys.count(key))
            throw std::runtime_error("config: unknown key: " + key);
    SolverConfig cfg = build_solver(kv);
    cfg.validate();
    return cfg;
}

SweepPlan sweep_plan_from_kv(const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv)
        if (!kSolverKeys.count(key) && !kSweepOnlyKeys.count(key))
            throw std::runtime_error("config: unknown key: " + key);
    SweepPlan plan;
    plan.base = build_solver(kv);
    plan.spec = plan.base.spec;
    if (auto it = kv.find("tol_rel"); it != kv.end())
        plan.tol_rel = to_double("tol_rel", it->second);
    if (auto it = kv.find("workers"); it != kv.end())
        plan.workers = to_int("workers", it->second);
    if (auto it = kv.find("epsilons"); it != kv.end()) {
        std::istringstream in(it->second);
        std::string tok;
        while (std::getline(in, tok, ','))
            plan.epsilons.push_back(to_double("epsilons", trim(tok)));
    }
    return plan;
}

} // namespace blowlab
