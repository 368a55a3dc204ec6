#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "blowlab/cutoffs.hpp"
#include "blowlab/hypergeometric.hpp"
#include "blowlab/parallel.hpp"

namespace blowlab {

// Surface area of the unit sphere in N dimensions (2, 2*pi, 4*pi, ...).
double unit_sphere_area(int N);

// Composite Simpson on a uniform grid (3/8 rule absorbs an odd interval
// count; two points fall back to the trapezoid).
double simpson_uniform(std::span<const double> f, double h);

// Adaptive Simpson for one-dimensional cross checks and data integrals.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10, int max_depth = 40);

// Composite Gauss-Legendre with fixed panels; the nodes move smoothly with
// the endpoints, which keeps integrals differentiable in their limits.
double gauss_legendre(const std::function<double(double)>& f, double a,
                      double b, int panels, int points_per_panel = 16);

// Nonnegative samples w(t_j, r_i) on a uniform tensor grid, radially weighted
// by area(N) * r^{N-1} and supported inside r <= r0 + t.
struct SpaceTimeField {
    std::vector<double> r;   // uniform, starts at 0
    std::vector<double> t;   // uniform, starts at 0
    std::vector<double> w;   // row-major: w[j*r.size()+i] at (t_j, r_i)
    int dim = 1;
    double r0 = 1.0;

    double at(std::size_t j, std::size_t i) const { return w[j * r.size() + i]; }
    double& at(std::size_t j, std::size_t i) { return w[j * r.size() + i]; }
    double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
    double dr() const { return r.size() > 1 ? r[1] - r[0] : 0.0; }
    // First time with any nonzero sample (returns t.back() for a zero field).
    double first_active_time() const;
    void validate() const;
};

enum class WeightKind { Psi, PsiStar, PhiPsi, PhiPsiStar };

// Integral of w * weight * area(N) r^{N-1} dr dt. The time axis is resampled
// on Simpson nodes covering the weight's support (rows interpolated); the
// radial axis uses the field grid. Throws when the grid does not cover the
// cutoff support, or when a phi-weighted node with w != 0 leaves the cone.
double spacetime_integral(const SpaceTimeField& field, WeightKind weight,
                          const CutoffSpec& cutoff, const PhiSpec* phi_spec,
                          Exec mode = Exec::Serial, int time_nodes = 129);

// The cumulative scale functional: the sigma-integral of the starred window
// integral against d(log sigma), truncated below at the field's first active
// time (the truncation only lowers the value, so the upper-bound inequality
// is preserved; see the notes in the repository docs).
double y_value(const SpaceTimeField& field, double R, double k,
               Exec mode = Exec::Serial);

struct YResult {
    std::vector<double> R;
    std::vector<double> Y;
    std::vector<double> dY_analytic;   // R^{-1} * starred window integral
    std::vector<double> upper;         // plain-cutoff window integral
};
YResult y_functional(const SpaceTimeField& field, std::span<const double> R_grid,
                     double k, Exec mode = Exec::Serial);

// Slab integrals of the self-similar solution: for each R the integral of
// phi^{p'} * area(N) r^{N-1} over t in [R/2, R], r in [0, 1+t]. Requires
// lambda > 1 so the ball stays inside the shifted cone; the radial axis is
// graded exponentially toward the cone to resolve the boundary layer.
struct ScalePoint {
    double R = 0;
    double value = 0;
};
std::vector<ScalePoint> phi_slab_integrals(const PhiSpec& spec, double p,
                                           std::span<const double> R_values,
                                           int nt = 65, int nr = 241,
                                           Exec mode = Exec::Serial);

// Log-log regression with optional multiplicative-log detection. The log
// model fits log I = slope*log R + log(log R + c0) + c over a small c0 grid
// and wins when its residual is decisively smaller.
struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double stderr_slope = 0;
    bool log_detected = false;
    double c0 = 0;
    double ssr_plain = 0;
    double ssr_log = 0;
};
SlopeFit fit_power_law(std::span<const ScalePoint> points, bool try_log = true);

} // namespace blowlab
