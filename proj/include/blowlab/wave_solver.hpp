#pragma once

#include <optional>
#include <vector>

#include "blowlab/cutoffs.hpp"
#include "blowlab/exponents.hpp"
#include "blowlab/hypergeometric.hpp"
#include "blowlab/parallel.hpp"
#include "blowlab/quadrature.hpp"

namespace blowlab {

// Radial initial profiles. Bump uses (1 - (r/r0)^2)^4 on [0, r0] for both
// components (C^3 at the support edge); ScaledBump divides each profile by
// its own radial integral so integral_g(N) equals g_amp exactly; Uniform is
// the spatially constant diagnostic profile for Laplacian-off runs.
enum class DataFamily { Bump, ScaledBump, Uniform };

struct InitialData {
    DataFamily family = DataFamily::Bump;
    double r0 = 1.0;
    double f_amp = 1.0;
    double g_amp = 1.0;

    double f(double r, int N) const;
    double g(double r, int N) const;
    // area(N) * integral of g r^{N-1} dr; must be positive.
    double integral_g(int N) const;
    void validate() const;
};

struct SolverConfig {
    ProblemSpec spec;
    InitialData data;
    double epsilon = 0.1;
    double dr = 0.02;
    double cfl = 0.45;              // dt = cfl * dr
    double r_max = 12.0;            // >= r0 + t_max for contained runs
    double t_max = 10.0;
    double blowup_threshold = 0.0;  // 0 -> 1e6 * initial amplitude scale
    bool richardson = false;
    bool disable_laplacian = false;    // pointwise ODE diagnostic
    bool disable_nonlinearity = false; // linear wave runs
    bool keep_traces = true;
    int trace_stride_r = 1;
    int trace_stride_t = 1;
    Exec exec = Exec::Serial;

    void validate() const;
    double dt() const { return cfl * dr; }
};

enum class BlowupCause { Threshold, Nan, None };
const char* blowup_cause_name(BlowupCause c);

struct BlowupReport {
    std::optional<double> T_num;
    BlowupCause cause = BlowupCause::None;
    std::vector<double> amp_times;
    std::vector<double> amp_values;
    std::optional<double> convergence_ratio;  // set by measure_lifespan
    bool certified = false;
    double threshold = 0.0;
};

// Signed space-time trace on a decimated tensor grid.
struct Trace {
    std::vector<double> r;
    std::vector<double> t;
    std::vector<double> v;  // row-major, v[j*r.size()+i]
    double at(std::size_t j, std::size_t i) const { return v[j * r.size() + i]; }
    double dr() const { return r.size() > 1 ? r[1] - r[0] : 0.0; }
    double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
};

struct SolveResult {
    BlowupReport report;
    Trace u, ut, ur;
    std::optional<Trace> v, vt, vr;
};

// Explicit leapfrog in time, second-order central differences in radius, the
// origin closed by symmetry. Stops at the first threshold crossing (linear
// interpolation in time), at a NaN, or at t_max.
SolveResult simulate(const SolverConfig& config);

// |trace|^power as a nonnegative field for the weighted integrals. Values
// beyond the containment radius r0 + t + 4 dr are zeroed (they sit at the
// 1e-12 relative level by the finite-propagation property).
SpaceTimeField power_field(const Trace& trace, double power, int dim, double r0);

// Relative gap between the two sides of the weak form of the u-equation
// tested against Psi = psi_R (optionally times the self-similar weight).
// Throws when psi_R's support is not contained in the trace window.
double weak_identity_residual(const SolveResult& result, const SolverConfig& config,
                              const CutoffSpec& cutoff,
                              const PhiSpec* phi_spec = nullptr);

enum class ConcentrationMode { U, Ut };

struct ConcentrationResult {
    std::vector<double> R;
    std::vector<double> ratio;
    double inf_ratio = 0;
    double spread = 0;  // max/min - 1 over the R grid
};

// Ratios of the starred window integrals of |u|^p (or |u_t|^p) against the
// concentration envelope (Ig * eps)^p R^{N - (N-1)p/2}.
ConcentrationResult check_concentration(const SolveResult& result,
                                        const SolverConfig& config, double power,
                                        std::span<const double> R_grid,
                                        ConcentrationMode mode);

struct LifespanMeasurement {
    double T_num = 0;
    bool certified = false;
    double ratio = 0;       // relative change under the last grid halving
    int refinements = 0;
    BlowupCause cause = BlowupCause::None;
};

// Runs at dr and dr/2 and accepts when the blow-up times agree within 5%;
// one more halving is tried before reporting a non-converged measurement.
// When nothing blows up within t_max the window is doubled a few times.
LifespanMeasurement measure_lifespan(SolverConfig config);

} // namespace blowlab
