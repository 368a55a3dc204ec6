#include "blowlab/wave_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowlab {

namespace {

double bump_profile(double r, double r0) {
    if (r >= r0) return 0.0;
    const double s = 1.0 - (r / r0) * (r / r0);
    const double s2 = s * s;
    return s2 * s2;
}

} // namespace

void InitialData::validate() const {
    if (!(r0 > 0.0)) throw std::domain_error("initial data: r0 must be > 0");
    if (!(g_amp >= 0.0) || !(f_amp >= 0.0))
        throw std::domain_error("initial data: amplitudes must be >= 0");
}

double InitialData::f(double r, int N) const {
    switch (family) {
        case DataFamily::Uniform: return f_amp;
        case DataFamily::Bump: return f_amp * bump_profile(r, r0);
        case DataFamily::ScaledBump: {
            const double norm = adaptive_simpson(
                [&](double s) {
                    return bump_profile(s, r0) * unit_sphere_area(N) *
                           std::pow(s, N - 1);
                },
                0.0, r0, 1e-12);
            return f_amp * bump_profile(r, r0) / norm;
        }
    }
    return 0.0;
}

double InitialData::g(double r, int N) const {
    switch (family) {
        case DataFamily::Uniform: return g_amp;
        case DataFamily::Bump: return g_amp * bump_profile(r, r0);
        case DataFamily::ScaledBump: {
            const double norm = adaptive_simpson(
                [&](double s) {
                    return bump_profile(s, r0) * unit_sphere_area(N) *
                           std::pow(s, N - 1);
                },
                0.0, r0, 1e-12);
            return g_amp * bump_profile(r, r0) / norm;
        }
    }
    return 0.0;
}

double InitialData::integral_g(int N) const {
    if (family == DataFamily::Uniform)
        throw std::domain_error("initial data: uniform profile has no finite integral");
    if (family == DataFamily::ScaledBump) return g_amp;
    return adaptive_simpson(
        [&](double s) {
            return g(s, N) * unit_sphere_area(N) * std::pow(s, N - 1);
        },
        0.0, r0, 1e-12);
}

void SolverConfig::validate() const {
    spec.validate();
    data.validate();
    if (!(epsilon > 0.0)) throw std::domain_error("solver: epsilon must be > 0");
    if (!(dr > 0.0)) throw std::domain_error("solver: dr must be > 0");
    if (!(cfl > 0.0 && cfl < 1.0)) throw std::domain_error("solver: cfl in (0,1)");
    if (!(t_max > 0.0)) throw std::domain_error("solver: t_max must be > 0");
    if (trace_stride_r < 1 || trace_stride_t < 1)
        throw std::domain_error("solver: trace strides must be >= 1");
    if (!disable_nonlinearity && !(data.g_amp > 0.0))
        throw std::domain_error("solver: blow-up runs need a positive g integral");
    const bool contained =
        !disable_laplacian && data.family != DataFamily::Uniform;
    if (contained && r_max < data.r0 + t_max)
        throw std::domain_error("solver: r_max must cover r0 + t_max");
}

const char* blowup_cause_name(BlowupCause c) {
    switch (c) {
        case BlowupCause::Threshold: return "threshold";
        case BlowupCause::Nan: return "nan";
        case BlowupCause::None: return "none-within-t_max";
    }
    return "?";
}

namespace {

struct Nonlinearity {
    ProblemKind kind;
    double a, b, p, q;
    bool off;

    double gu(double u, double ut, double v, double vt) const {
        if (off) return 0.0;
        switch (kind) {
            case ProblemKind::SinglePowerU: return a * std::pow(std::fabs(u), p);
            case ProblemKind::SinglePowerUt: return b * std::pow(std::fabs(ut), p);
            case ProblemKind::Combined:
                return a * std::pow(std::fabs(u), q) + b * std::pow(std::fabs(ut), p);
            case ProblemKind::SystemSS: return a * std::pow(std::fabs(v), p);
            case ProblemKind::SystemGG: return a * std::pow(std::fabs(vt), p);
            case ProblemKind::SystemSG: return a * std::pow(std::fabs(v), q);
        }
        return 0.0;
    }
    double gv(double u, double ut) const {
        if (off) return 0.0;
        switch (kind) {
            case ProblemKind::SystemSS: return b * std::pow(std::fabs(u), q);
            case ProblemKind::SystemGG: return b * std::pow(std::fabs(ut), q);
            case ProblemKind::SystemSG: return b * std::pow(std::fabs(ut), p);
            default: return 0.0;
        }
    }
};

struct StepGrid {
    int nr;
    double dr, dt, dim;
    bool laplacian_on;
    std::vector<double> inv_r;  // 1/r_i, unused entry at the origin
};

inline double laplacian_at(const std::vector<double>& u, int i, const StepGrid& g) {
    if (!g.laplacian_on) return 0.0;
    const double inv_dr2 = 1.0 / (g.dr * g.dr);
    if (i == 0) return g.dim * 2.0 * (u[1] - u[0]) * inv_dr2;
    const double right = i + 1 < g.nr ? u[i + 1] : 0.0;
    return (right - 2.0 * u[i] + u[i - 1]) * inv_dr2 +
           (g.dim - 1.0) * g.inv_r[i] * (right - u[i - 1]) * 0.5 / g.dr;
}

inline double next_value(const std::vector<double>& uc, const std::vector<double>& up,
                         int i, const StepGrid& g, double source) {
    return 2.0 * uc[i] - up[i] + g.dt * g.dt * (laplacian_at(uc, i, g) + source);
}

// Serial reference kernel.
void advance_serial(const StepGrid& g, const Nonlinearity& nl,
                    const std::vector<double>& uc, const std::vector<double>& up,
                    const std::vector<double>& ut_src, const double* vc,
                    const double* vt_src, std::vector<double>& un) {
    for (int i = 0; i < g.nr; ++i) {
        const double v = vc ? vc[i] : 0.0;
        const double vt = vt_src ? vt_src[i] : 0.0;
        un[i] = next_value(uc, up, i, g, nl.gu(uc[i], ut_src[i], v, vt));
    }
}

// OpenMP kernel; pointwise independent writes, so it matches the serial
// reference bit for bit.
void advance_omp(const StepGrid& g, const Nonlinearity& nl,
                 const std::vector<double>& uc, const std::vector<double>& up,
                 const std::vector<double>& ut_src, const double* vc,
                 const double* vt_src, std::vector<double>& un) {
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < g.nr; ++i) {
        const double v = vc ? vc[i] : 0.0;
        const double vt = vt_src ? vt_src[i] : 0.0;
        un[i] = next_value(uc, up, i, g, nl.gu(uc[i], ut_src[i], v, vt));
    }
}

void advance_v_serial(const StepGrid& g, const Nonlinearity& nl,
                      const std::vector<double>& vc, const std::vector<double>& vp,
                      const std::vector<double>& uc, const std::vector<double>& ut_src,
                      std::vector<double>& vn) {
    for (int i = 0; i < g.nr; ++i)
        vn[i] = next_value(vc, vp, i, g, nl.gv(uc[i], ut_src[i]));
}

void advance_v_omp(const StepGrid& g, const Nonlinearity& nl,
                   const std::vector<double>& vc, const std::vector<double>& vp,
                   const std::vector<double>& uc, const std::vector<double>& ut_src,
                   std::vector<double>& vn) {
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < g.nr; ++i)
        vn[i] = next_value(vc, vp, i, g, nl.gv(uc[i], ut_src[i]));
}

struct TraceWriter {
    Trace* trace = nullptr;
    int stride_r = 1, stride_t = 1, nr = 0;
    double dr = 0;

    void init(Trace& tr, int nr_, double dr_, int sr, int st) {
        trace = &tr;
        nr = nr_;
        dr = dr_;
        stride_r = sr;
        stride_t = st;
        for (int i = 0; i < nr; i += sr) tr.r.push_back(i * dr_);
    }
    bool wants(long step) const { return trace && step % stride_t == 0; }
    void push(double time, const std::vector<double>& row) {
        trace->t.push_back(time);
        for (int i = 0; i < nr; i += stride_r) trace->v.push_back(row[i]);
    }
};

std::vector<double> radial_derivative(const std::vector<double>& u, double dr) {
    const int n = static_cast<int>(u.size());
    std::vector<double> d(n);
    d[0] = 0.0;  // even symmetry at the origin
    for (int i = 1; i + 1 < n; ++i) d[i] = (u[i + 1] - u[i - 1]) * 0.5 / dr;
    d[n - 1] = (u[n - 1] - u[n - 2]) / dr;
    return d;
}

} // namespace

SolveResult simulate(const SolverConfig& config) {
    config.validate();
    const int nr = static_cast<int>(std::floor(config.r_max / config.dr + 0.5)) + 1;
    if (nr < 3) throw std::domain_error("solver: grid too small");
    const double dt = config.dt();
    const long nsteps = static_cast<long>(std::ceil(config.t_max / dt));
    const bool system = kind_is_system(config.spec.kind);
    const double eps = config.epsilon;

    StepGrid grid{nr, config.dr, dt, double(config.spec.dim),
                  !config.disable_laplacian, std::vector<double>(nr, 0.0)};
    for (int i = 1; i < nr; ++i) grid.inv_r[i] = 1.0 / (i * config.dr);
    Nonlinearity nl{config.spec.kind, config.spec.a, config.spec.b,
                    config.spec.p, config.spec.q, config.disable_nonlinearity};

    std::vector<double> uc(nr), up(nr), un(nr), ut_src(nr);
    std::vector<double> vc, vp, vn, vt_src;
    for (int i = 0; i < nr; ++i) {
        const double r = i * config.dr;
        uc[i] = eps * config.data.f(r, config.spec.dim);
        ut_src[i] = eps * config.data.g(r, config.spec.dim);
    }
    if (system) {
        vc = uc;  // systems share the data pair across components
        vt_src = ut_src;
        vp.resize(nr);
        vn.resize(nr);
    }

    double amp0 = 0.0;
    for (int i = 0; i < nr; ++i)
        amp0 = std::max({amp0, std::fabs(uc[i]), std::fabs(ut_src[i])});
    const double threshold =
        config.blowup_threshold > 0.0 ? config.blowup_threshold : 1e6 * amp0;
    if (!(threshold > 0.0))
        throw std::domain_error("solver: initial data identically zero");

    // Support containment is imposed by construction: the exact solution
    // vanishes beyond r0 + t, so the scheme's dispersive haze there (of
    // truncation size) is cleared after every step.
    const bool contained =
        !config.disable_laplacian && config.data.family != DataFamily::Uniform;
    auto mask_row = [&](std::vector<double>& x, double time) {
        if (!contained) return;
        const double edge = config.data.r0 + time + 2.0 * config.dr;
        int start = static_cast<int>(std::floor(edge / config.dr + 1e-9)) + 1;
        for (int i = std::max(start, 0); i < nr; ++i) x[i] = 0.0;
    };

    SolveResult result;
    result.report.threshold = threshold;
    TraceWriter wu, wut, wur, wv, wvt, wvr;
    if (config.keep_traces) {
        wu.init(result.u, nr, config.dr, config.trace_stride_r, config.trace_stride_t);
        wut.init(result.ut, nr, config.dr, config.trace_stride_r, config.trace_stride_t);
        wur.init(result.ur, nr, config.dr, config.trace_stride_r, config.trace_stride_t);
        if (system) {
            result.v.emplace();
            result.vt.emplace();
            result.vr.emplace();
            wv.init(*result.v, nr, config.dr, config.trace_stride_r, config.trace_stride_t);
            wvt.init(*result.vt, nr, config.dr, config.trace_stride_r, config.trace_stride_t);
            wvr.init(*result.vr, nr, config.dr, config.trace_stride_r, config.trace_stride_t);
        }
    }

    auto record_row = [&](long step, double time, const std::vector<double>& u_row,
                          const std::vector<double>& ut_row,
                          const std::vector<double>& v_row,
                          const std::vector<double>& vt_row) {
        if (!wu.wants(step)) return;
        wu.push(time, u_row);
        wut.push(time, ut_row);
        wur.push(time, radial_derivative(u_row, config.dr));
        if (system) {
            wv.push(time, v_row);
            wvt.push(time, vt_row);
            wvr.push(time, radial_derivative(v_row, config.dr));
        }
    };

    auto max_amp = [&](const std::vector<double>& x) {
        double m = 0.0;
        bool bad = false;
#ifdef _OPENMP
        #pragma omp parallel for schedule(static) reduction(max : m) \
            reduction(|| : bad) if (config.exec == Exec::Parallel)
#endif
        for (int i = 0; i < nr; ++i) {
            const double v = std::fabs(x[i]);
            if (!std::isfinite(v)) bad = true;
            else if (v > m) m = v;
        }
        return bad ? std::numeric_limits<double>::quiet_NaN() : m;
    };

    record_row(0, 0.0, uc, ut_src, vc, vt_src);
    result.report.amp_times.push_back(0.0);
    result.report.amp_values.push_back(amp0);

    // Taylor start to keep the first step second order.
    up = uc;
    if (system) vp = vc;
    {
        std::vector<double> lap(nr), g0(nr), lapv, gv0;
        for (int i = 0; i < nr; ++i) {
            lap[i] = laplacian_at(uc, i, grid);
            g0[i] = nl.gu(uc[i], ut_src[i], system ? vc[i] : 0.0,
                          system ? vt_src[i] : 0.0);
        }
        if (system) {
            lapv.resize(nr);
            gv0.resize(nr);
            for (int i = 0; i < nr; ++i) {
                lapv[i] = laplacian_at(vc, i, grid);
                gv0[i] = nl.gv(uc[i], ut_src[i]);
            }
        }
        for (int i = 0; i < nr; ++i) {
            const double acc = lap[i] + g0[i];
            un[i] = uc[i] + dt * ut_src[i] + 0.5 * dt * dt * acc;
        }
        if (system)
            for (int i = 0; i < nr; ++i) {
                const double acc = lapv[i] + gv0[i];
                vn[i] = vc[i] + dt * vt_src[i] + 0.5 * dt * dt * acc;
            }
        // second-order value of u_t at t = dt
        for (int i = 0; i < nr; ++i)
            ut_src[i] += dt * (lap[i] + g0[i]);
        if (system)
            for (int i = 0; i < nr; ++i) vt_src[i] += dt * (lapv[i] + gv0[i]);
        mask_row(un, dt);
        mask_row(ut_src, dt);
        if (system) {
            mask_row(vn, dt);
            mask_row(vt_src, dt);
        }
        std::swap(up, uc);
        std::swap(uc, un);
        if (system) {
            std::swap(vp, vc);
            std::swap(vc, vn);
        }
    }

    double prev_amp = amp0;
    for (long n = 1; n <= nsteps; ++n) {
        const double t_now = n * dt;
        double amp = max_amp(uc);
        if (system) {
            const double av = max_amp(vc);
            amp = std::isnan(amp) || std::isnan(av) ? std::numeric_limits<double>::quiet_NaN()
                                                    : std::max(amp, av);
        }
        if (std::isnan(amp)) {
            result.report.cause = BlowupCause::Nan;
            result.report.T_num = t_now;
            return result;
        }
        if (n % config.trace_stride_t == 0) {
            result.report.amp_times.push_back(t_now);
            result.report.amp_values.push_back(amp);
        }
        if (amp >= threshold) {
            result.report.cause = BlowupCause::Threshold;
            const double denom = amp - prev_amp;
            const double frac = denom > 0.0
                                    ? std::clamp((threshold - prev_amp) / denom, 0.0, 1.0)
                                    : 1.0;
            result.report.T_num = (n - 1) * dt + frac * dt;
            return result;
        }
        prev_amp = amp;

        if (config.exec == Exec::Parallel) {
            advance_omp(grid, nl, uc, up, ut_src,
                        system ? vc.data() : nullptr,
                        system ? vt_src.data() : nullptr, un);
            if (system) advance_v_omp(grid, nl, vc, vp, uc, ut_src, vn);
        } else {
            advance_serial(grid, nl, uc, up, ut_src,
                           system ? vc.data() : nullptr,
                           system ? vt_src.data() : nullptr, un);
            if (system) advance_v_serial(grid, nl, vc, vp, uc, ut_src, vn);
        }
        mask_row(un, t_now + dt);
        if (system) mask_row(vn, t_now + dt);

        // trace row at t_n uses the centered difference through u^{n+1}
        if (wu.wants(n)) {
            std::vector<double> ut_row(nr), vt_row;
            for (int i = 0; i < nr; ++i) ut_row[i] = (un[i] - up[i]) * 0.5 / dt;
            if (system) {
                vt_row.resize(nr);
                for (int i = 0; i < nr; ++i) vt_row[i] = (vn[i] - vp[i]) * 0.5 / dt;
            }
            record_row(n, t_now, uc, ut_row, vc, vt_row);
        }

        // one-sided second-order u_t at t_{n+1} feeds the next source
        for (int i = 0; i < nr; ++i)
            ut_src[i] = (3.0 * un[i] - 4.0 * uc[i] + up[i]) * 0.5 / dt;
        if (system)
            for (int i = 0; i < nr; ++i)
                vt_src[i] = (3.0 * vn[i] - 4.0 * vc[i] + vp[i]) * 0.5 / dt;

        std::swap(up, uc);
        std::swap(uc, un);
        if (system) {
            std::swap(vp, vc);
            std::swap(vc, vn);
        }
    }
    result.report.cause = BlowupCause::None;
    return result;
}

SpaceTimeField power_field(const Trace& trace, double power, int dim, double r0) {
    SpaceTimeField field;
    field.r = trace.r;
    field.t = trace.t;
    field.dim = dim;
    field.r0 = r0;
    field.w.resize(trace.v.size());
    const double pad = 4.0 * trace.dr();
    for (std::size_t j = 0; j < trace.t.size(); ++j)
        for (std::size_t i = 0; i < trace.r.size(); ++i) {
            const bool inside = trace.r[i] <= r0 + trace.t[j] + pad;
            field.at(j, i) =
                inside ? std::pow(std::fabs(trace.at(j, i)), power) : 0.0;
        }
    return field;
}

double weak_identity_residual(const SolveResult& result, const SolverConfig& config,
                              const CutoffSpec& cutoff, const PhiSpec* phi_spec) {
    cutoff.validate();
    const Trace& u = result.u;
    const Trace& ut = result.ut;
    const Trace& ur = result.ur;
    if (u.t.empty()) throw std::domain_error("weak residual: traces were not kept");
    if (cutoff.R > u.t.back() - 2.0 * u.dt())
        throw std::domain_error("weak residual: cutoff support exceeds the trace window");
    if (phi_spec && !(phi_spec->lambda > config.data.r0 + 6.0 * u.dr()))
        throw std::domain_error(
            "weak residual: phi shift must clear the containment margin");

    const int N = config.spec.dim;
    const double area = unit_sphere_area(N);
    const double pad = 4.0 * u.dr();
    Nonlinearity nl{config.spec.kind, config.spec.a, config.spec.b,
                    config.spec.p, config.spec.q, config.disable_nonlinearity};

    std::size_t jmax = 0;
    while (jmax + 1 < u.t.size() && u.t[jmax + 1] <= cutoff.R) ++jmax;

    const std::size_t nrr = u.r.size();
    std::vector<double> row(nrr), lhs_rows(jmax + 1), rhs_rows(jmax + 1);
    for (std::size_t j = 0; j <= jmax; ++j) {
        const double tt = u.t[j];
        const double contain = config.data.r0 + tt + pad;
        const double ps = psi(cutoff, tt);
        const double ps_dt = psi_dt(cutoff, tt);
        // source side
        for (std::size_t i = 0; i < nrr; ++i) {
            const double rr = u.r[i];
            if (rr > contain || ps == 0.0) {
                row[i] = 0.0;
                continue;
            }
            const double uv = u.at(j, i), utv = ut.at(j, i);
            const double vv = result.v ? result.v->at(j, i) : 0.0;
            const double vtv = result.vt ? result.vt->at(j, i) : 0.0;
            double weight = ps;
            if (phi_spec) weight *= phi(*phi_spec, rr, tt);
            row[i] = nl.gu(uv, utv, vv, vtv) * weight * area * std::pow(rr, N - 1);
        }
        lhs_rows[j] = simpson_uniform(row, u.dr());
        // gradient side
        for (std::size_t i = 0; i < nrr; ++i) {
            const double rr = u.r[i];
            if (rr > contain) {
                row[i] = 0.0;
                continue;
            }
            double psi_t_term = ps_dt, psi_r_term = 0.0;
            if (phi_spec) {
                const double ph = phi(*phi_spec, rr, tt);
                psi_t_term = ps_dt * ph + ps * phi_dt(*phi_spec, rr, tt);
                psi_r_term = ps * phi_dr(*phi_spec, rr, tt);
            }
            const double integrand =
                -ut.at(j, i) * psi_t_term + ur.at(j, i) * psi_r_term;
            row[i] = integrand * area * std::pow(rr, N - 1);
        }
        rhs_rows[j] = simpson_uniform(row, u.dr());
    }
    const double lhs_bulk = simpson_uniform(lhs_rows, u.dt());
    const double rhs = simpson_uniform(rhs_rows, u.dt());

    // initial-velocity term: eps * integral of g * Psi(.,0)
    for (std::size_t i = 0; i < nrr; ++i) {
        const double rr = u.r[i];
        const double gv = config.data.g(rr, N);
        if (gv == 0.0) {
            row[i] = 0.0;
            continue;
        }
        double w = 1.0;
        if (phi_spec) w = phi(*phi_spec, rr, 0.0);
        row[i] = config.epsilon * gv * w * area * std::pow(rr, N - 1);
    }
    const double lhs0 = simpson_uniform(row, u.dr());

    const double lhs = lhs0 + lhs_bulk;
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    return scale == 0.0 ? 0.0 : std::fabs(lhs - rhs) / scale;
}

ConcentrationResult check_concentration(const SolveResult& result,
                                        const SolverConfig& config, double power,
                                        std::span<const double> R_grid,
                                        ConcentrationMode mode) {
    if (!(power > 1.0)) throw std::domain_error("concentration: power must be > 1");
    const Trace& trace = mode == ConcentrationMode::U ? result.u : result.ut;
    if (trace.t.empty()) throw std::domain_error("concentration: traces were not kept");
    const int N = config.spec.dim;
    const SpaceTimeField field = power_field(trace, power, N, config.data.r0);
    const double ig = config.data.integral_g(N);
    const double k = std::max(2.0, 2.0 * power / (power - 1.0));

    ConcentrationResult out;
    for (double R : R_grid) {
        CutoffSpec c{k, R};
        const double num =
            spacetime_integral(field, WeightKind::PsiStar, c, nullptr, config.exec);
        const double den = std::pow(ig * config.epsilon, power) *
                           std::pow(R, N - 0.5 * (N - 1.0) * power);
        out.R.push_back(R);
        out.ratio.push_back(num / den);
    }
    out.inf_ratio = *std::min_element(out.ratio.begin(), out.ratio.end());
    const double mx = *std::max_element(out.ratio.begin(), out.ratio.end());
    out.spread = out.inf_ratio > 0.0 ? mx / out.inf_ratio - 1.0
                                     : std::numeric_limits<double>::infinity();
    return out;
}

LifespanMeasurement measure_lifespan(SolverConfig config) {
    config.validate();
    config.keep_traces = false;

    auto run_T = [&](double dr, double t_max) -> std::pair<BlowupCause, double> {
        SolverConfig c = config;
        c.dr = dr;
        c.t_max = t_max;
        const bool contained =
            !c.disable_laplacian && c.data.family != DataFamily::Uniform;
        if (contained) c.r_max = std::max(c.r_max, c.data.r0 + t_max + 2.0 * dr);
        const SolveResult res = simulate(c);
        return {res.report.cause, res.report.T_num.value_or(0.0)};
    };

    // locate the blow-up window on the coarse grid before paying for the
    // refined runs
    LifespanMeasurement m;
    double t_max = config.t_max;
    double T1 = 0.0;
    bool found = false;
    for (int extend = 0; extend <= 7; ++extend) {
        auto [cause, T] = run_T(config.dr, t_max);
        m.cause = cause;
        if (cause != BlowupCause::None) {
            T1 = T;
            found = true;
            break;
        }
        t_max *= 2.0;
    }
    if (!found) return m;

    auto refined = [&](double dr, double prev_T) -> std::pair<BlowupCause, double> {
        double window = std::min(t_max, 1.3 * prev_T + 2.0);
        auto r = run_T(dr, window);
        if (r.first == BlowupCause::None && window < t_max)
            r = run_T(dr, t_max);  // the refined time moved past the window
        return r;
    };

    auto [cause2, T2] = refined(0.5 * config.dr, T1);
    if (cause2 == BlowupCause::None) return m;
    m.cause = cause2;
    m.refinements = 1;
    m.ratio = std::fabs(T1 - T2) / T2;
    if (m.ratio < 0.05) {
        m.T_num = T2;
        m.certified = true;
        return m;
    }
    auto [cause3, T3] = refined(0.25 * config.dr, T2);
    if (cause3 == BlowupCause::None) {
        m.T_num = T2;
        m.certified = false;
        return m;
    }
    m.cause = cause3;
    m.refinements = 2;
    m.ratio = std::fabs(T2 - T3) / T3;
    m.T_num = T3;
    m.certified = m.ratio < 0.05;
    return m;
}

} // namespace blowlab
