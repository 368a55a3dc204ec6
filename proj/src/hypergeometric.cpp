#include "blowlab/hypergeometric.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace blowlab {

namespace {

constexpr std::size_t kTermCap = 1000000;
constexpr double kConeMargin = 1e-12;

bool nonpositive_integer(double c) {
    return c <= 0.0 && std::fabs(c - std::round(c)) < 1e-12;
}

} // namespace

double gauss_2f1(double a, double b, double c, double z, double tol) {
    if (!(z >= 0.0) || z >= 1.0)
        throw std::domain_error("gauss_2f1: z must lie in [0,1)");
    if (nonpositive_integer(c))
        throw std::domain_error("gauss_2f1: c is a nonpositive integer");
    if (!(tol > 0.0)) throw std::domain_error("gauss_2f1: tol must be > 0");

    double sum = 1.0, comp = 0.0;  // Kahan pair
    double term = 1.0;
    int small_streak = 0;
    for (std::size_t n = 0; n < kTermCap; ++n) {
        term *= (a + n) * (b + n) * z / ((c + n) * (n + 1.0));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::fabs(term) < tol * std::fabs(sum)) {
            if (++small_streak >= 3) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw std::runtime_error("gauss_2f1: series did not converge (term cap hit)");
}

double quadratic_identity_residual(double a, double c, double z) {
    const double lhs = gauss_2f1(a, a + 0.5, c, z, 1e-15);
    const double w = std::sqrt(z);
    const double rhs = std::pow(1.0 + w, -2.0 * a) *
                       gauss_2f1(2.0 * a, c - 0.5, 2.0 * c - 1.0,
                                 2.0 * w / (1.0 + w), 1e-15);
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    return scale == 0.0 ? 0.0 : std::fabs(lhs - rhs) / scale;
}

void PhiSpec::validate() const {
    if (!(beta > 0.0)) throw std::domain_error("phi: beta must be > 0");
    if (!(lambda >= 0.0)) throw std::domain_error("phi: lambda must be >= 0");
    if (dim < 2) throw std::domain_error("phi: dimension must be >= 2");
}

namespace {

// Unshifted value at (r, s) with s already including the shift.
double phi_unshifted(double beta, int N, double r, double s) {
    if (!(r >= 0.0)) throw std::domain_error("phi: r must be >= 0");
    if (!(s > 0.0) || s - r <= kConeMargin * s)
        throw std::domain_error("phi: point outside the cone r < lambda+t");
    const double rho = r / s;
    if (rho < 0.5)
        return std::pow(s, -beta) *
               gauss_2f1(0.5 * beta, 0.5 * (beta + 1.0), 0.5 * N, rho * rho);
    return std::pow(s + r, -beta) *
           gauss_2f1(beta, 0.5 * (N - 1.0), N - 1.0, 2.0 * r / (s + r));
}

double phi_unshifted_dr(double beta, int N, double r, double s) {
    if (!(r >= 0.0)) throw std::domain_error("phi: r must be >= 0");
    if (!(s > 0.0) || s - r <= kConeMargin * s)
        throw std::domain_error("phi: point outside the cone r < lambda+t");
    const double rho = r / s;
    if (rho < 0.5) {
        // d/dz F(a,b,c;z) = (ab/c) F(a+1,b+1,c+1;z), z = r^2/s^2
        const double a = 0.5 * beta, b = 0.5 * (beta + 1.0), c = 0.5 * N;
        const double fp = (a * b / c) *
                          gauss_2f1(a + 1.0, b + 1.0, c + 1.0, rho * rho);
        return std::pow(s, -beta) * fp * 2.0 * r / (s * s);
    }
    const double a = beta, b = 0.5 * (N - 1.0), c = N - 1.0;
    const double z = 2.0 * r / (s + r);
    const double f = gauss_2f1(a, b, c, z);
    const double fp = (a * b / c) * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, z);
    const double sr = s + r;
    return -beta * std::pow(sr, -beta - 1.0) * f +
           std::pow(sr, -beta) * fp * 2.0 * s / (sr * sr);
}

double shift_scale(const PhiSpec& spec) {
    return spec.lambda > 0.0 ? std::pow(spec.lambda, spec.beta) : 1.0;
}

} // namespace

double phi(const PhiSpec& spec, double r, double t) {
    spec.validate();
    return shift_scale(spec) * phi_unshifted(spec.beta, spec.dim, r, spec.lambda + t);
}

double phi_dt(const PhiSpec& spec, double r, double t) {
    spec.validate();
    return -spec.beta * shift_scale(spec) *
           phi_unshifted(spec.beta + 1.0, spec.dim, r, spec.lambda + t);
}

double phi_dr(const PhiSpec& spec, double r, double t) {
    spec.validate();
    return shift_scale(spec) * phi_unshifted_dr(spec.beta, spec.dim, r, spec.lambda + t);
}

double special_w(int N, double lambda, double r, double t) {
    if (N < 1) throw std::domain_error("special_w: dimension must be >= 1");
    if (!(lambda > 0.0)) throw std::domain_error("special_w: lambda must be > 0");
    const double s = lambda + t;
    if (!(r >= 0.0) || s - r <= kConeMargin * s)
        throw std::domain_error("special_w: point outside the cone r < lambda+t");
    if (N == 1) return 1.0;
    return std::pow(lambda, N - 1.0) * std::pow(s * s - r * r, -0.5 * (N - 1.0));
}

double special_w_dt(int N, double lambda, double r, double t) {
    if (N < 1) throw std::domain_error("special_w: dimension must be >= 1");
    if (!(lambda > 0.0)) throw std::domain_error("special_w: lambda must be > 0");
    const double s = lambda + t;
    if (!(r >= 0.0) || s - r <= kConeMargin * s)
        throw std::domain_error("special_w: point outside the cone r < lambda+t");
    if (N == 1) return 0.0;
    return -(N - 1.0) * std::pow(lambda, N - 1.0) * s *
           std::pow(s * s - r * r, -0.5 * (N + 1.0));
}

double wave_identity_residual(const PhiSpec& spec,
                              std::span<const std::pair<double, double>> points,
                              double h, Exec mode) {
    spec.validate();
    if (!(h > 0.0)) throw std::domain_error("wave residual: h must be > 0");
    for (const auto& [r, t] : points) {
        if (r - h <= 0.0)
            throw std::domain_error("wave residual: stencil touches r = 0");
        const double s = spec.lambda + t;
        if (r + h >= s - h)
            throw std::domain_error("wave residual: stencil leaves the cone");
    }
    return deterministic_max(mode, points.size(), [&](std::size_t i) {
        const auto [r, t] = points[i];
        const double c = phi(spec, r, t);
        const double dtt =
            (phi(spec, r, t + h) - 2.0 * c + phi(spec, r, t - h)) / (h * h);
        const double drr =
            (phi(spec, r + h, t) - 2.0 * c + phi(spec, r - h, t)) / (h * h);
        const double dr = (phi(spec, r + h, t) - phi(spec, r - h, t)) / (2.0 * h);
        const double res = dtt - drr - (spec.dim - 1.0) / r * dr;
        return std::fabs(res) * std::pow(spec.lambda + t, spec.beta + 2.0);
    });
}

BoundConstants estimate_bound_constants(const PhiSpec& spec, int nz, int nt,
                                        double margin, Exec mode) {
    spec.validate();
    if (nz < 2 || nt < 1)
        throw std::domain_error("bound constants: need nz >= 2, nt >= 1");
    if (!(margin >= 1e-3))
        throw std::domain_error("bound constants: margin must be >= 1e-3");
    const double half = 0.5 * (spec.dim - 1.0);
    if (std::fabs(spec.beta - half) <= 1e-12)
        throw std::domain_error(
            "bound constants: beta = (N-1)/2 is not covered by either envelope");
    const bool low_range = spec.beta < half;

    // The family is homogeneous of degree -beta, so the normalized quantity
    // depends on z = r/t only; a small t-grid is kept as a consistency check.
    std::vector<double> zs(nz), ts(nt);
    for (int i = 0; i < nz; ++i) zs[i] = (1.0 - margin) * i / (nz - 1);
    for (int j = 0; j < nt; ++j)
        ts[j] = 0.5 * std::pow(8.0, nt == 1 ? 0.0 : double(j) / (nt - 1));

    const std::size_t total = zs.size() * ts.size();
    std::vector<double> vals(total);
    PhiSpec un{spec.beta, 0.0, spec.dim};
    parallel_for(mode, total, [&](std::size_t idx) {
        const double z = zs[idx % zs.size()];
        const double t = ts[idx / zs.size()];
        double v = phi(un, z * t, t) * std::pow(t, spec.beta);
        if (!low_range) v *= std::pow(1.0 - z * z, spec.beta - half);
        vals[idx] = v;
    });

    BoundConstants out;
    out.beta = spec.beta;
    out.sample_count = total;
    out.lower = vals[0];
    out.upper = vals[0];
    for (double v : vals) {
        if (v < out.lower) out.lower = v;
        if (v > out.upper) out.upper = v;
    }
    if (low_range && out.lower < 1.0 - 1e-9)
        throw std::runtime_error("bound constants: infimum fell below 1");
    return out;
}

} // namespace blowlab
