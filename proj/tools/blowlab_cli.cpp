// Command-line front end: classification, curve tracing, the special-function
// and cutoff suites, single simulations, epsilon sweeps and the verification
// runner. Every subcommand prints to stdout and optionally writes files under
// --out; exit code 0 means no check failed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "blowlab/config.hpp"
#include "blowlab/exponents.hpp"
#include "blowlab/hypergeometric.hpp"
#include "blowlab/ode_lemma.hpp"
#include "blowlab/quadrature.hpp"
#include "blowlab/report.hpp"
#include "blowlab/sweep.hpp"
#include "blowlab/verify.hpp"
#include "blowlab/wave_solver.hpp"

namespace fs = std::filesystem;
using namespace blowlab;

namespace {

struct Common {
    std::string out_dir;
    std::string format = "json";
    int workers = 1;
    unsigned seed = 12345;
    bool parallel = false;
};

void emit(const Common& c, const std::string& name, const std::string& content) {
    if (c.out_dir.empty()) {
        std::cout << content;
        return;
    }
    fs::create_directories(c.out_dir);
    report::write_file((fs::path(c.out_dir) / name).string(), content);
    std::cout << "wrote " << (fs::path(c.out_dir) / name).string() << "\n";
}

Exec exec_of(const Common& c) { return c.parallel ? Exec::Parallel : Exec::Serial; }

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::string tok;
    std::istringstream in(csv);
    while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for lifespan bounds of semilinear waves"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--out", common.out_dir, "directory for output files");
    app.add_option("--format", common.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", common.workers, "concurrent sweep runs");
    app.add_option("--seed", common.seed, "seed for the sampling suites");
    app.add_flag("--parallel", common.parallel, "use the OpenMP kernels");

    // classify
    std::string kind_str = "single-u";
    int N = 3;
    double p = 2.0, q = 2.0, a = 1.0, b = 1.0;
    std::optional<double> eps_opt;
    auto* c_cls = app.add_subcommand("classify", "predicted lifespan law");
    c_cls->add_option("--kind", kind_str)->required();
    c_cls->add_option("--N", N)->required();
    c_cls->add_option("--p", p)->required();
    c_cls->add_option("--q", q);
    c_cls->add_option("--a", a);
    c_cls->add_option("--b", b);
    double eps_val = 0.0;
    auto* eps_flag = c_cls->add_option("--epsilon", eps_val, "refined-scale input");

    // trace-curve
    double p_lo = 1.1, p_hi = 4.0;
    int resolution = 64;
    auto* c_curve = app.add_subcommand("trace-curve", "critical curve in (p,q)");
    c_curve->add_option("--kind", kind_str)->required();
    c_curve->add_option("--N", N)->required();
    c_curve->add_option("--p-min", p_lo);
    c_curve->add_option("--p-max", p_hi);
    c_curve->add_option("--resolution", resolution);

    // phi
    double beta = 1.0, lambda = 0.0, r_at = 0.3, t_at = 1.0;
    bool phi_suite = false;
    auto* c_phi = app.add_subcommand("phi", "self-similar solution evaluation");
    c_phi->add_option("--beta", beta)->required();
    c_phi->add_option("--lambda", lambda);
    c_phi->add_option("--N", N)->required();
    c_phi->add_option("--r", r_at);
    c_phi->add_option("--t", t_at);
    c_phi->add_flag("--suite", phi_suite, "run the identity suites instead");

    // quad
    double quad_p = 2.0;
    std::string quad_Rs = "32,64,128,256,512,1024,2048";
    auto* c_quad = app.add_subcommand("quad", "slab-integral scaling suite");
    c_quad->add_option("--beta", beta)->required();
    c_quad->add_option("--lambda", lambda)->default_val(1.5);
    c_quad->add_option("--N", N)->required();
    c_quad->add_option("--p", quad_p);
    c_quad->add_option("--R", quad_Rs, "comma-separated R values");

    // ode-lemma
    OdiParams odi;
    std::string deltas_csv = "0.2,0.1,0.05,0.02";
    double rtol = 1e-8;
    auto* c_ode = app.add_subcommand("ode-lemma", "critical-case bound vs simulation");
    c_ode->add_option("--p1", odi.p1);
    c_ode->add_option("--p2", odi.p2);
    c_ode->add_option("--K1", odi.K1);
    c_ode->add_option("--K2", odi.K2);
    c_ode->add_option("--t0", odi.t0);
    c_ode->add_option("--deltas", deltas_csv);
    c_ode->add_option("--rtol", rtol);

    // simulate / sweep / fit
    std::string config_path, records_path;
    auto* c_sim = app.add_subcommand("simulate", "single finite-difference run");
    c_sim->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    auto* c_sweep = app.add_subcommand("sweep", "epsilon sweep with certificates");
    c_sweep->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    auto* c_fit = app.add_subcommand("fit", "regression of recorded lifespans");
    c_fit->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    c_fit->add_option("--records", records_path)->required()->check(CLI::ExistingFile);

    // verify
    std::string suites_csv;
    bool coarse = false;
    auto* c_verify = app.add_subcommand("verify", "invariant suites, machine-readable");
    c_verify->add_option("--suites", suites_csv, "comma-separated suite names");
    c_verify->add_flag("--coarse", coarse, "skip grid-convergence checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_cls->parsed()) {
            ProblemSpec spec{kind_from_name(kind_str), N, p, q, a, b};
            if (eps_flag->count()) eps_opt = eps_val;
            const ExponentSuite suite = exponent_suite(spec);
            const LifespanLaw law = classify(spec, eps_opt);
            emit(common, "classify.json", report::classify_json(spec, suite, law));
        } else if (c_curve->parsed()) {
            const ProblemKind kind = kind_from_name(kind_str);
            const CriticalCurve curve =
                trace_critical_curve(kind, N, p_lo, p_hi, resolution);
            if (common.format == "csv")
                emit(common, "curve.csv", report::curve_csv(curve));
            else
                emit(common, "curve.json", report::curve_json(kind, N, curve));
        } else if (c_phi->parsed()) {
            PhiSpec spec{beta, lambda, N};
            if (phi_suite) {
                VerifyOptions opt;
                opt.suites = {"hypergeometric"};
                opt.seed = common.seed;
                opt.exec = exec_of(common);
                const VerifyReport rep = verify_all(opt);
                emit(common, "phi_suite.json", report::verify_json(rep));
                return rep.all_pass() ? 0 : 1;
            }
            emit(common, "phi.json",
                 report::phi_point_json(spec, r_at, t_at, phi(spec, r_at, t_at),
                                        phi_dt(spec, r_at, t_at),
                                        phi_dr(spec, r_at, t_at)));
        } else if (c_quad->parsed()) {
            PhiSpec spec{beta, lambda, N};
            const std::vector<double> Rs = parse_list(quad_Rs);
            const auto pts = phi_slab_integrals(spec, quad_p, Rs, 65, 241,
                                                exec_of(common));
            // fit the asymptotic tail; early octaves carry envelope transients
            const std::size_t tail = std::min<std::size_t>(pts.size(), 5);
            const SlopeFit fit =
                fit_power_law(std::span(pts).subspan(pts.size() - tail));
            emit(common, "scaling.csv", report::scale_csv(pts, fit));
        } else if (c_ode->parsed()) {
            const std::vector<double> deltas = parse_list(deltas_csv);
            std::vector<OdeBlowup> blows;
            std::vector<LifespanBound> bounds;
            bool ok = true;
            for (double d : deltas) {
                OdiParams params = odi;
                params.delta = d;
                bounds.push_back(lifespan_bound(params));
                blows.push_back(extremal_ode_simulate(params, rtol));
                ok = ok && blows.back().log_T <= bounds.back().log_bound;
            }
            emit(common, "ode_lemma.csv",
                 report::ode_sweep_csv(deltas, blows, bounds));
            return ok ? 0 : 1;
        } else if (c_sim->parsed()) {
            SolverConfig cfg = solver_config_from_kv(parse_kv_file(config_path));
            if (common.parallel) cfg.exec = Exec::Parallel;
            if (cfg.richardson) {
                // certified lifespan: run the grid-halving chain instead of a
                // single pass
                const LifespanMeasurement m = measure_lifespan(cfg);
                BlowupReport rep;
                rep.cause = m.cause;
                if (m.cause != BlowupCause::None) rep.T_num = m.T_num;
                rep.convergence_ratio = m.ratio;
                rep.certified = m.certified;
                emit(common, "blowup_report.json",
                     report::blowup_report_json(cfg, rep));
                return m.cause == BlowupCause::None ? 1 : 0;
            }
            const SolveResult res = simulate(cfg);
            emit(common, "blowup_report.json",
                 report::blowup_report_json(cfg, res.report));
            if (cfg.keep_traces && !common.out_dir.empty()) {
                emit(common, "trace_u.csv", report::trace_csv(res.u));
                emit(common, "trace_ut.csv", report::trace_csv(res.ut));
                if (res.v) emit(common, "trace_v.csv", report::trace_csv(*res.v));
                if (res.vt) emit(common, "trace_vt.csv", report::trace_csv(*res.vt));
            }
        } else if (c_sweep->parsed()) {
            SweepPlan plan = sweep_plan_from_kv(parse_kv_file(config_path));
            plan.workers = std::max(plan.workers, common.workers);
            std::vector<SweepRecord> streamed;
            SweepResult result;
            try {
                result = run_sweep(plan, [&](const SweepRecord& rec) {
                    streamed.push_back(rec);
                });
            } catch (const AggregationError& err) {
                emit(common, "sweep_records.csv", report::sweep_csv(streamed));
                std::cerr << "error: " << err.what() << "\n";
                return 1;
            }
            emit(common, "sweep_records.csv", report::sweep_csv(result.records));
            const LifespanLaw law = classify(plan.spec);
            const FitResult fit = fit_scaling(result.records, law, plan.tol_rel);
            emit(common, "fit.json", report::fit_json(fit, law));
            return fit.verdict == Verdict::Inconsistent ? 1 : 0;
        } else if (c_fit->parsed()) {
            SweepPlan plan = sweep_plan_from_kv(parse_kv_file(config_path));
            std::ifstream in(records_path);
            std::string line;
            std::getline(in, line);  // header
            std::vector<SweepRecord> records;
            while (std::getline(in, line)) {
                SweepRecord rec;
                std::istringstream row(line);
                std::string tok;
                std::getline(row, tok, ',');
                rec.epsilon = std::stod(tok);
                std::getline(row, tok, ',');
                rec.T_num = std::stod(tok);
                std::getline(row, tok, ',');
                rec.certified = tok == "1";
                records.push_back(rec);
            }
            const LifespanLaw law = classify(plan.spec);
            const FitResult fit = fit_scaling(records, law, plan.tol_rel);
            emit(common, "fit.json", report::fit_json(fit, law));
            return fit.verdict == Verdict::Inconsistent ? 1 : 0;
        } else if (c_verify->parsed()) {
            VerifyOptions opt;
            if (!suites_csv.empty()) {
                std::istringstream in(suites_csv);
                std::string tok;
                while (std::getline(in, tok, ',')) opt.suites.push_back(tok);
            }
            opt.seed = common.seed;
            opt.coarse = coarse;
            opt.exec = exec_of(common);
            const VerifyReport rep = verify_all(opt);
            emit(common, "verify.json", report::verify_json(rep));
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
