#include "blowlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace blowlab::report {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

// Numbers are embedded as preformatted strings so the byte stream does not
// depend on the JSON library's float printer.
ordered_json num(double v) { return format_double(v); }

ordered_json spec_json(const ProblemSpec& spec) {
    ordered_json j;
    j["kind"] = kind_name(spec.kind);
    j["N"] = spec.dim;
    j["p"] = num(spec.p);
    if (kind_uses_q(spec.kind)) j["q"] = num(spec.q);
    j["a"] = num(spec.a);
    j["b"] = num(spec.b);
    return j;
}

void put_opt(ordered_json& j, const char* key, const std::optional<double>& v) {
    if (v) j[key] = num(*v);
}

ordered_json law_json(const LifespanLaw& law) {
    ordered_json j;
    j["form"] = law_form_name(law.form);
    if (law.form != LawForm::NoClaim) j["exponent"] = num(law.exponent);
    j["binding_condition"] = law.binding_condition;
    j["near_critical"] = law.near_critical;
    if (law.log_refined_scale) j["log_refined_scale"] = num(*law.log_refined_scale);
    return j;
}

} // namespace

std::string classify_json(const ProblemSpec& spec, const ExponentSuite& suite,
                          const LifespanLaw& law) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["inputs"] = spec_json(spec);
    ordered_json e;
    put_opt(e, "strauss_quadratic", suite.strauss_quadratic);
    put_opt(e, "strauss_critical_p", suite.strauss_critical_p);
    put_opt(e, "glassey_critical_p", suite.glassey_critical_p);
    put_opt(e, "strauss_margin", suite.strauss);
    put_opt(e, "glassey_margin", suite.glassey);
    put_opt(e, "combined_margin", suite.combined);
    put_opt(e, "ss_margin_pq", suite.ss_pq);
    put_opt(e, "ss_margin_qp", suite.ss_qp);
    put_opt(e, "ss_margin_max", suite.ss_max);
    put_opt(e, "gg_margin_pq", suite.gg_pq);
    put_opt(e, "gg_margin_qp", suite.gg_qp);
    put_opt(e, "gg_margin_max", suite.gg_max);
    put_opt(e, "sg_margin_first", suite.sg_first);
    put_opt(e, "sg_margin_second", suite.sg_second);
    put_opt(e, "sg_margin_max", suite.sg_max);
    j["exponents"] = e;
    j["law"] = law_json(law);
    j["matching_cases"] = law.matching_cases;
    return j.dump(2) + "\n";
}

std::string curve_json(ProblemKind kind, int N, const CriticalCurve& curve) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind_name(kind);
    j["N"] = N;
    auto pts = [](const std::vector<CurvePoint>& v) {
        ordered_json arr = ordered_json::array();
        for (const CurvePoint& pt : v) {
            ordered_json e;
            e["p"] = num(pt.p);
            e["q"] = num(pt.q);
            e["residual"] = num(pt.residual);
            arr.push_back(e);
        }
        return arr;
    };
    j["points"] = pts(curve.points);
    if (!curve.second_points.empty()) j["second_points"] = pts(curve.second_points);
    if (curve.intersection) {
        j["intersection"] = {{"p", num(curve.intersection->first)},
                             {"q", num(curve.intersection->second)}};
    }
    return j.dump(2) + "\n";
}

std::string curve_csv(const CriticalCurve& curve) {
    std::string out = "curve,p,q,residual\n";
    for (const CurvePoint& pt : curve.points)
        out += "1," + format_double(pt.p) + "," + format_double(pt.q) + "," +
               format_double(pt.residual) + "\n";
    for (const CurvePoint& pt : curve.second_points)
        out += "2," + format_double(pt.p) + "," + format_double(pt.q) + "," +
               format_double(pt.residual) + "\n";
    return out;
}

std::string phi_point_json(const PhiSpec& spec, double r, double t, double value,
                           double dt, double dr) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["beta"] = num(spec.beta);
    j["lambda"] = num(spec.lambda);
    j["N"] = spec.dim;
    j["r"] = num(r);
    j["t"] = num(t);
    j["value"] = num(value);
    j["dt"] = num(dt);
    j["dr"] = num(dr);
    return j.dump(2) + "\n";
}

std::string scale_csv(const std::vector<ScalePoint>& points, const SlopeFit& fit) {
    std::string out = "R,integral,fitted_slope,log_detected\n";
    for (const ScalePoint& pt : points)
        out += format_double(pt.R) + "," + format_double(pt.value) + "," +
               format_double(fit.slope) + "," + (fit.log_detected ? "1" : "0") +
               "\n";
    return out;
}

std::string ode_sweep_csv(const std::vector<double>& deltas,
                          const std::vector<OdeBlowup>& blows,
                          const std::vector<LifespanBound>& bounds) {
    std::string out = "delta,log_T_blow,log_bound,margin,K3\n";
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        out += format_double(deltas[i]) + "," + format_double(blows[i].log_T) +
               "," + format_double(bounds[i].log_bound) + "," +
               format_double(bounds[i].log_bound - blows[i].log_T) + "," +
               format_double(bounds[i].K3) + "\n";
    }
    return out;
}

std::string blowup_report_json(const SolverConfig& config, const BlowupReport& rep) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["inputs"] = spec_json(config.spec);
    j["epsilon"] = num(config.epsilon);
    j["dr"] = num(config.dr);
    j["cfl"] = num(config.cfl);
    j["cause"] = blowup_cause_name(rep.cause);
    if (rep.T_num) j["T_num"] = num(*rep.T_num);
    j["threshold"] = num(rep.threshold);
    if (rep.convergence_ratio) j["convergence_ratio"] = num(*rep.convergence_ratio);
    j["certified"] = rep.certified;
    ordered_json amp = ordered_json::array();
    for (std::size_t i = 0; i < rep.amp_times.size(); ++i)
        amp.push_back({num(rep.amp_times[i]), num(rep.amp_values[i])});
    j["max_amplitude_trace"] = amp;
    return j.dump(2) + "\n";
}

std::string trace_csv(const Trace& trace) {
    std::string out = "t\\r";
    for (double r : trace.r) out += "," + format_double(r);
    out += "\n";
    for (std::size_t j = 0; j < trace.t.size(); ++j) {
        out += format_double(trace.t[j]);
        for (std::size_t i = 0; i < trace.r.size(); ++i)
            out += "," + format_double(trace.at(j, i));
        out += "\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out = "epsilon,T_num,certified,ratio,cause\n";
    for (const SweepRecord& rec : records) {
        out += format_double(rec.epsilon) + "," + format_double(rec.T_num) + "," +
               (rec.certified ? "1" : "0") + "," + format_double(rec.ratio) + "," +
               blowup_cause_name(rec.cause) + "\n";
    }
    return out;
}

std::string fit_json(const FitResult& fit, const LifespanLaw& law) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["model"] = fit_model_name(fit.model);
    j["alpha_hat"] = num(fit.alpha_hat);
    j["stderr"] = num(fit.stderr_alpha);
    j["intercept"] = num(fit.intercept);
    j["predicted_alpha"] = num(fit.predicted_alpha);
    j["verdict"] = verdict_name(fit.verdict);
    j["n_used"] = fit.n_used;
    j["decades_T"] = num(fit.decades_T);
    j["decades_eps"] = num(fit.decades_eps);
    j["law"] = law_json(law);
    return j.dump(2) + "\n";
}

std::string verify_json(const VerifyReport& rep) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["all_pass"] = rep.all_pass();
    ordered_json arr = ordered_json::array();
    for (const CheckOutcome& c : rep.checks) {
        ordered_json e;
        e["suite"] = c.suite;
        e["name"] = c.name;
        e["outcome"] = c.skipped ? "skipped" : (c.pass ? "pass" : "fail");
        e["value"] = num(c.value);
        e["tolerance"] = num(c.tolerance);
        if (!c.note.empty()) e["note"] = c.note;
        arr.push_back(e);
    }
    j["checks"] = arr;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace blowlab::report
