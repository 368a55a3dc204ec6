#include "blowlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "blowlab/cutoffs.hpp"
#include "blowlab/exponents.hpp"
#include "blowlab/hypergeometric.hpp"
#include "blowlab/ode_lemma.hpp"
#include "blowlab/quadrature.hpp"
#include "blowlab/wave_solver.hpp"

namespace blowlab {

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) {
        return c.pass || c.skipped;
    });
}

namespace {

struct Collector {
    VerifyReport& report;
    std::string suite;

    void leq(const std::string& name, double value, double tol,
             const std::string& note = "") {
        report.checks.push_back(
            {suite, name, std::isfinite(value) && value <= tol, false, value, tol, note});
    }
    void skip(const std::string& name, const std::string& note) {
        report.checks.push_back({suite, name, false, true, 0, 0, note});
    }
};

bool wants(const VerifyOptions& opt, const std::string& suite) {
    if (opt.suites.empty()) return true;
    return std::find(opt.suites.begin(), opt.suites.end(), suite) !=
           opt.suites.end();
}

void verify_exponents(const VerifyOptions& opt, VerifyReport& rep) {
    Collector c{rep, "exponents"};
    auto quad = opt.strauss_quadratic_impl
                    ? opt.strauss_quadratic_impl
                    : std::function<double(int, double)>(strauss_quadratic);

    c.leq("quadratic-root-3d", std::fabs(quad(3, 1.0 + std::sqrt(2.0))), 1e-12);
    c.leq("critical-p-3d", std::fabs(strauss_critical_p(3) - (1.0 + std::sqrt(2.0))),
          1e-12);
    std::mt19937 rng(opt.seed);
    std::uniform_real_distribution<double> up(1.01, 6.0);
    std::uniform_int_distribution<int> un(1, 6);
    double worst_margin = 0.0, worst_gg = 0.0, worst_ss = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int N = un(rng);
        const double p = up(rng);
        worst_margin = std::max(
            worst_margin, std::fabs(strauss_margin(N, p) -
                                    quad(N, p) / (2.0 * p * (p - 1.0))));
        worst_gg = std::max(worst_gg,
                            std::fabs(gg_margin(N, p, p) - glassey_margin(N, p)));
        worst_ss = std::max(worst_ss,
                            std::fabs(ss_margin(N, p, p) - strauss_margin(N, p)));
    }
    c.leq("margin-vs-quadratic", worst_margin, 1e-12);
    c.leq("gg-diagonal", worst_gg, 1e-12);
    c.leq("ss-diagonal", worst_ss, 1e-12);
}

void verify_hypergeometric(const VerifyOptions& opt, VerifyReport& rep) {
    Collector c{rep, "hypergeometric"};
    std::mt19937 rng(opt.seed + 1);
    std::uniform_real_distribution<double> ua(0.2, 2.5), uc(0.8, 4.0),
        uz(0.0, 0.9);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i)
        worst = std::max(worst, quadratic_identity_residual(ua(rng), uc(rng), uz(rng)));
    c.leq("quadratic-identity", worst, 1e-10);

    std::uniform_real_distribution<double> uzr(0.0, 0.95), ut(0.5, 4.0);
    for (int N : {2, 3, 4}) {
        double worst_cf = 0.0;
        PhiSpec spec{double(N), 0.0, N};
        for (int i = 0; i < 200; ++i) {
            const double t = ut(rng), r = uzr(rng) * t;
            const double closed = t * std::pow(t * t - r * r, -0.5 * (N + 1.0));
            worst_cf = std::max(worst_cf,
                                std::fabs(phi(spec, r, t) - closed) / closed);
        }
        c.leq("closed-form-N" + std::to_string(N), worst_cf, 1e-10);
    }

    PhiSpec spec{1.4, 0.0, 3};
    double worst_dt = 0.0, worst_sign = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = ut(rng), r = uzr(rng) * t * 0.9;
        const double h = 1e-5;
        const double fd = (phi(spec, r, t + h) - phi(spec, r, t - h)) / (2.0 * h);
        const double an = phi_dt(spec, r, t);
        worst_dt = std::max(worst_dt, std::fabs(an - fd) / std::fabs(an));
        worst_sign = std::max(worst_sign, an);  // decay means negative
    }
    c.leq("time-derivative-vs-fd", worst_dt, 1e-6);
    c.leq("monotone-decay", worst_sign, 0.0);
}

void verify_cutoffs(const VerifyOptions&, VerifyReport& rep) {
    Collector c{rep, "cutoffs"};
    double worst1 = 0.0, worst2 = 0.0;
    for (double k : {2.0, 3.0, 4.0, 6.0, 8.0})
        for (double R : {1.0, 4.0, 16.0, 64.0}) {
            const PsiBoundReport b = psi_derivative_bounds({k, R}, 8001);
            worst1 = std::max(worst1, b.ratio_d1);
            worst2 = std::max(worst2, b.ratio_d2);
        }
    c.leq("derivative-bound-1", worst1, 1.0 + 1e-9);
    c.leq("derivative-bound-2", worst2, 1.0 + 1e-9);
    c.leq("midpoint-value", std::fabs(eta(0.75) - 0.5), 1e-14);
}

void verify_scaling(const VerifyOptions& opt, VerifyReport& rep) {
    Collector c{rep, "scaling"};
    const int N = 3;
    const double p = 2.0, pprime = p / (p - 1.0);
    const double boundary = 0.5 * (N + 1.0) - 1.0 / p;
    std::vector<double> Rs;
    for (int k = 5; k <= 11; ++k) Rs.push_back(std::pow(2.0, k));

    struct Case {
        double beta;
        double expect;
        bool log_expected;
        const char* name;
    } cases[] = {
        {0.45 * boundary, N + 1.0 - 0.45 * boundary * pprime, false, "below-boundary"},
        {boundary, N - 0.5 * (N - 1.0) * pprime, true, "at-boundary"},
        {boundary + 0.75, N - 0.5 * (N - 1.0) * pprime, false, "above-boundary"},
    };
    for (const Case& cs : cases) {
        PhiSpec spec{cs.beta, 1.5, N};
        const auto pts = phi_slab_integrals(spec, p, Rs, 65, 241, opt.exec);
        const auto tail = std::span(pts).subspan(pts.size() - 5);
        const SlopeFit fit = fit_power_law(tail);
        c.leq(std::string("slope-") + cs.name, std::fabs(fit.slope - cs.expect), 0.05,
              cs.log_expected == fit.log_detected ? "log flag ok" : "log flag wrong");
        if (cs.log_expected != fit.log_detected)
            rep.checks.back().pass = false;
    }
}

void verify_yfunctional(const VerifyOptions& opt, VerifyReport& rep) {
    Collector c{rep, "yfunctional"};
    // synthetic separable field supported in t in [2,6], r in [0,1]
    SpaceTimeField field;
    field.dim = 1;
    field.r0 = 1.0;
    const int nrr = 65, ntt = 257;
    for (int i = 0; i < nrr; ++i) field.r.push_back(i * (1.5 / (nrr - 1)));
    for (int j = 0; j < ntt; ++j) field.t.push_back(j * (8.0 / (ntt - 1)));
    field.w.assign(std::size_t(nrr) * ntt, 0.0);
    for (int j = 0; j < ntt; ++j)
        for (int i = 0; i < nrr; ++i) {
            const double t = field.t[j], r = field.r[i];
            const double gt = (t > 2.0 && t < 6.0)
                                  ? std::pow((t - 2.0) * (6.0 - t) / 4.0, 2)
                                  : 0.0;
            const double hr = r < 1.0 ? std::pow(1.0 - r * r, 2) : 0.0;
            field.at(j, i) = gt * hr;
        }
    const double k = 4.0;
    double worst_dy = 0.0, worst_upper = 0.0;
    for (double R : {3.0, 4.0, 5.0, 6.0}) {
        const double h = 1e-3 * R;
        const double dy_num = (y_value(field, R + h, k, opt.exec) -
                               y_value(field, R - h, k, opt.exec)) /
                              (2.0 * h);
        CutoffSpec cut{k, R};
        const double dy_an =
            spacetime_integral(field, WeightKind::PsiStar, cut, nullptr, opt.exec) / R;
        worst_dy = std::max(worst_dy, std::fabs(dy_num - dy_an) /
                                          std::max(1e-300, std::fabs(dy_an)));
        const double upper =
            spacetime_integral(field, WeightKind::Psi, cut, nullptr, opt.exec);
        const double y = y_value(field, R, k, opt.exec);
        worst_upper = std::max(worst_upper, (y - upper) / std::max(upper, 1e-300));
    }
    c.leq("derivative-identity", worst_dy, 1e-4);
    c.leq("upper-bound", worst_upper, 1e-9);
}

void verify_odelemma(const VerifyOptions&, VerifyReport& rep) {
    Collector c{rep, "odelemma"};
    double worst = 0.0;
    for (double delta : {0.2, 0.1, 0.05}) {
        OdiParams params{delta, 1.0, 1.0, 2.0, 2.0, 3.0};
        const LifespanBound bound = lifespan_bound(params);
        const OdeBlowup blow = extremal_ode_simulate(params, 1e-8);
        worst = std::max(worst, blow.log_T - bound.log_bound);
    }
    c.leq("bound-holds", worst, 0.0, "log T minus log bound");
}

void verify_solver(const VerifyOptions& opt, VerifyReport& rep) {
    Collector c{rep, "solver"};
    if (opt.coarse) {
        c.skip("dalembert-order", "coarse mode: grid-convergence checks skipped");
        c.skip("energy-drift", "coarse mode: grid-convergence checks skipped");
        return;
    }
    SolverConfig cfg;
    cfg.spec = {ProblemKind::SinglePowerU, 1, 2.0, 2.0, 1.0, 1.0};
    cfg.data = {DataFamily::Bump, 1.0, 1.0, 0.0};
    cfg.epsilon = 0.1;
    cfg.disable_nonlinearity = true;
    cfg.t_max = 4.0;
    cfg.r_max = 6.0;
    cfg.exec = opt.exec;

    auto linf_error = [&](double dr) {
        SolverConfig c2 = cfg;
        c2.dr = dr;
        const SolveResult res = simulate(c2);
        const Trace& u = res.u;
        const std::size_t j = u.t.size() - 1;
        const double t = u.t[j];
        double worst = 0.0;
        for (std::size_t i = 0; i < u.r.size(); ++i) {
            const double r = u.r[i];
            auto f0 = [&](double x) {
                const double ax = std::fabs(x);
                return ax < 1.0 ? std::pow(1.0 - ax * ax, 4) : 0.0;
            };
            const double exact = 0.5 * cfg.epsilon * (f0(r - t) + f0(r + t));
            worst = std::max(worst, std::fabs(u.at(j, i) - exact));
        }
        return worst;
    };
    const double e1 = linf_error(0.02), e2 = linf_error(0.01);
    const double order = std::log2(e1 / e2);
    c.leq("dalembert-order", std::fabs(order - 2.0), 0.2,
          "observed order " + std::to_string(order));

    SolverConfig ec = cfg;
    ec.dr = 0.01;
    ec.data.g_amp = 1.0;
    const SolveResult res = simulate(ec);
    const double area = unit_sphere_area(1);
    auto energy_at = [&](std::size_t j) {
        std::vector<double> row(res.u.r.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
            const double k = res.ut.at(j, i), s = res.ur.at(j, i);
            row[i] = 0.5 * (k * k + s * s) * area;
        }
        return simpson_uniform(row, res.u.dr());
    };
    const double E0 = energy_at(1);
    double drift = 0.0;
    for (std::size_t j = 2; j < res.u.t.size() - 1; ++j)
        drift = std::max(drift, std::fabs(energy_at(j) - E0) / E0);
    c.leq("energy-drift", drift, 1e-3);
}

void verify_concentration(const VerifyOptions& opt, VerifyReport& rep) {
    Collector c{rep, "concentration"};
    SolverConfig cfg;
    cfg.spec = {ProblemKind::SinglePowerU, 1, 3.0, 2.0, 1.0, 1.0};
    cfg.data = {DataFamily::Bump, 1.0, 1.0, 1.0};
    cfg.epsilon = 0.1;
    cfg.disable_nonlinearity = true;
    cfg.t_max = 34.0;
    cfg.r_max = 36.0;
    cfg.dr = 0.04;
    cfg.trace_stride_t = 4;
    cfg.trace_stride_r = 2;
    cfg.exec = opt.exec;
    const SolveResult res = simulate(cfg);
    const std::vector<double> Rs{4.0, 8.0, 16.0, 32.0};
    // derivative windows: the sharp mode on the line
    const ConcentrationResult conc =
        check_concentration(res, cfg, 3.0, Rs, ConcentrationMode::Ut);
    c.leq("ratio-positive", -conc.inf_ratio, 0.0);
    c.leq("ratio-spread", conc.spread, 0.2);
    const ConcentrationResult plain =
        check_concentration(res, cfg, 3.0, Rs, ConcentrationMode::U);
    c.leq("plain-ratio-positive", -plain.inf_ratio, 0.0);
}

} // namespace

VerifyReport verify_all(const VerifyOptions& options) {
    VerifyReport rep;
    if (wants(options, "exponents")) verify_exponents(options, rep);
    if (wants(options, "hypergeometric")) verify_hypergeometric(options, rep);
    if (wants(options, "cutoffs")) verify_cutoffs(options, rep);
    if (wants(options, "scaling")) verify_scaling(options, rep);
    if (wants(options, "yfunctional")) verify_yfunctional(options, rep);
    if (wants(options, "odelemma")) verify_odelemma(options, rep);
    if (wants(options, "solver")) verify_solver(options, rep);
    if (wants(options, "concentration")) verify_concentration(options, rep);
    return rep;
}

} // namespace blowlab
