#include "blowlab/ode_lemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowlab {

namespace {

constexpr double kBlowupThreshold = 1e12;
constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

void OdiParams::validate() const {
    if (!(delta > 0.0 && K1 > 0.0 && K2 > 0.0))
        throw std::domain_error("ode lemma: delta, K1, K2 must be > 0");
    if (!(p1 > 1.0 && p2 > 1.0))
        throw std::domain_error("ode lemma: p1, p2 must be > 1");
    if (!(p2 < p1 + 1.0))
        throw std::domain_error("ode lemma: hypothesis p2 < p1 + 1 violated");
    if (!(t0 > 2.0)) throw std::domain_error("ode lemma: t0 must be > 2");
}

double segment_integral(double p2) {
    if (std::fabs(p2 - 2.0) < 1e-14) return std::log(2.0);
    return (1.0 - std::pow(2.0, p2 - 2.0)) / (2.0 - p2);
}

LifespanBound lifespan_bound(const OdiParams& params) {
    params.validate();
    const double p1 = params.p1, p2 = params.p2;
    const double J = segment_integral(p2);
    const double base = std::pow(4.0 * params.K1, p1 - 1.0) * params.K2 /
                        ((p1 - 1.0) * J);
    LifespanBound out;
    out.K3 = std::pow(base, 1.0 / (1.0 + p1 - p2));
    const double exp_part =
        out.K3 * std::pow(params.delta, -(p1 - 1.0) / (p1 - p2 + 1.0));
    out.log_bound = std::max(4.0 * std::log(params.t0), exp_part);
    out.bound = out.log_bound < 700.0 ? std::exp(out.log_bound) : kInf;
    return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
struct DP {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
};

struct StepResult {
    double y;     // fifth-order value
    double err;   // embedded error estimate
};

template <class F>
StepResult dp_step(const F& f, double x, double y, double h) {
    const double k1 = f(x, y);
    const double k2 = f(x + DP::c2 * h, y + h * DP::a21 * k1);
    const double k3 = f(x + DP::c3 * h, y + h * (DP::a31 * k1 + DP::a32 * k2));
    const double k4 =
        f(x + DP::c4 * h, y + h * (DP::a41 * k1 + DP::a42 * k2 + DP::a43 * k3));
    const double k5 = f(x + DP::c5 * h, y + h * (DP::a51 * k1 + DP::a52 * k2 +
                                                 DP::a53 * k3 + DP::a54 * k4));
    const double k6 =
        f(x + h, y + h * (DP::a61 * k1 + DP::a62 * k2 + DP::a63 * k3 +
                          DP::a64 * k4 + DP::a65 * k5));
    const double ynew = y + h * (DP::b1 * k1 + DP::b3 * k3 + DP::b4 * k4 +
                                 DP::b5 * k5 + DP::b6 * k6);
    const double k7 = f(x + h, ynew);
    const double err = h * (DP::e1 * k1 + DP::e3 * k3 + DP::e4 * k4 +
                            DP::e5 * k5 + DP::e6 * k6 + DP::e7 * k7);
    return {ynew, err};
}

} // namespace

OdeBlowup extremal_ode_simulate(const OdiParams& params, double rtol) {
    params.validate();
    if (!(rtol > 0.0 && rtol < 1.0))
        throw std::domain_error("ode lemma: rtol must lie in (0,1)");
    const double delta = params.delta, K1 = params.K1, K2 = params.K2;
    const double p1 = params.p1, p2 = params.p2;

    // In tau = log t the hypotheses saturate as
    //   dphi/dtau = max(delta/K1, phi^{p1} / (K2 tau^{p2-1})).
    auto rhs = [&](double tau, double phi_v) {
        const double floor = delta / K1;
        if (phi_v <= 0.0) return floor;
        const double steep = std::pow(phi_v, p1) / (K2 * std::pow(tau, p2 - 1.0));
        return std::max(floor, steep);
    };

    const double log_bound = lifespan_bound(params).log_bound;
    const double tau_cap = std::log(10.0) + log_bound;

    double tau = std::log(params.t0);
    double phi_v = 0.0;
    double h = 0.01 * tau;
    OdeBlowup out;
    const long max_steps = 20000000;
    while (out.steps < max_steps) {
        if (tau > tau_cap)
            throw std::runtime_error(
                "extremal ODE failed to blow up below ten times the bound");
        if (h < 1e-14 * std::max(tau, 1.0)) break;  // step underflow
        StepResult st = dp_step(rhs, tau, phi_v, h);
        ++out.steps;
        const double scale = rtol * (std::fabs(phi_v) + delta / K1);
        if (std::fabs(st.err) > scale) {
            h *= std::max(0.2, 0.9 * std::pow(scale / std::fabs(st.err), 0.2));
            continue;
        }
        if (st.y >= kBlowupThreshold) {
            // bisect the step fraction for the crossing
            double lo = 0.0, hi = h;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (dp_step(rhs, tau, phi_v, mid).y >= kBlowupThreshold ? hi : lo) =
                    mid;
            }
            tau += hi;
            break;
        }
        tau += h;
        phi_v = st.y;
        const double grow =
            st.err == 0.0 ? 5.0 : 0.9 * std::pow(scale / std::fabs(st.err), 0.2);
        h *= std::clamp(grow, 0.2, 5.0);
    }
    out.log_T = tau;
    out.T = tau < 700.0 ? std::exp(tau) : kInf;
    return out;
}

} // namespace blowlab
