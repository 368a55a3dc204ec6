// Independent reference implementations used only to produce expected values
// for tests. Nothing here may call into the library paths it checks.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracles {

// Plain long-double series for the Gauss function, summed far past the target
// precision with no early termination heuristics.
inline double hyp2f1_reference(double a, double b, double c, double z) {
    long double term = 1.0L, sum = 1.0L;
    const long double zl = z;
    int quiet = 0;
    for (int n = 0; n < 4000000; ++n) {
        term *= (a + n) * (b + n) * zl / ((c + n) * (n + 1.0L));
        sum += term;
        if (fabsl(term) < 1e-25L * fabsl(sum)) {
            if (++quiet >= 10) return static_cast<double>(sum);
        } else {
            quiet = 0;
        }
    }
    throw std::runtime_error("oracle series did not converge");
}

// Recursive adaptive Simpson, written independently of the library version.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-11, int depth = 48) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    std::function<double(double, double, double, double, double, double, double,
                         int)>
        rec = [&](double x0, double x2, double f0, double f1, double f2,
                  double whole, double eps, int d) -> double {
        const double x1 = 0.5 * (x0 + x2);
        const double xl = 0.5 * (x0 + x1), xr = 0.5 * (x1 + x2);
        const double fl = f(xl), fr = f(xr);
        const double left = (x1 - x0) / 6.0 * (f0 + 4.0 * fl + f1);
        const double right = (x2 - x1) / 6.0 * (f1 + 4.0 * fr + f2);
        const double diff = left + right - whole;
        if (d <= 0 || std::fabs(diff) <= 15.0 * eps)
            return left + right + diff / 15.0;
        return rec(x0, x1, f0, fl, f1, left, 0.5 * eps, d - 1) +
               rec(x1, x2, f1, fr, f2, right, 0.5 * eps, d - 1);
    };
    return rec(a, b, fa, fm, fb, coarse, tol, depth);
}

// Classic step-doubling RK4 with event detection on y[0] exceeding a
// threshold; used for the pointwise blow-up diagnostics.
struct Rk4Blowup {
    double T = 0;
    bool hit = false;
};

inline Rk4Blowup rk4_blowup_time(
    const std::function<void(double, const double*, double*)>& f, double y0,
    double v0, double t_end, double threshold, double h0 = 1e-3,
    double tol = 1e-10) {
    double y[2] = {y0, v0};
    double t = 0.0, h = h0;
    auto step = [&](const double* yin, double tin, double hh, double* yout) {
        double k1[2], k2[2], k3[2], k4[2], tmp[2];
        f(tin, yin, k1);
        for (int i = 0; i < 2; ++i) tmp[i] = yin[i] + 0.5 * hh * k1[i];
        f(tin + 0.5 * hh, tmp, k2);
        for (int i = 0; i < 2; ++i) tmp[i] = yin[i] + 0.5 * hh * k2[i];
        f(tin + 0.5 * hh, tmp, k3);
        for (int i = 0; i < 2; ++i) tmp[i] = yin[i] + hh * k3[i];
        f(tin + hh, tmp, k4);
        for (int i = 0; i < 2; ++i)
            yout[i] = yin[i] + hh / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    };
    while (t < t_end) {
        double one[2], two_a[2], two[2];
        step(y, t, h, one);
        step(y, t, 0.5 * h, two_a);
        step(two_a, t + 0.5 * h, 0.5 * h, two);
        const double err = std::fabs(one[0] - two[0]) + std::fabs(one[1] - two[1]);
        const double scale = tol * (1.0 + std::fabs(y[0]) + std::fabs(y[1]));
        if (err > scale) {
            h *= 0.5;
            continue;
        }
        if (two[0] >= threshold) {
            // bisect the step for the crossing
            double lo = 0.0, hi = h;
            for (int i = 0; i < 80; ++i) {
                const double mid = 0.5 * (lo + hi);
                double probe[2];
                step(y, t, mid, probe);
                (probe[0] >= threshold ? hi : lo) = mid;
            }
            return {t + hi, true};
        }
        t += h;
        y[0] = two[0];
        y[1] = two[1];
        if (err < 0.1 * scale) h *= 1.6;
    }
    return {t_end, false};
}

// d'Alembert solution on the line with even data, g = 0.
inline double dalembert_even(const std::function<double(double)>& profile,
                             double eps, double r, double t) {
    return 0.5 * eps * (profile(std::fabs(r - t)) + profile(std::fabs(r + t)));
}

} // namespace oracles
