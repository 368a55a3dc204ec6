#include "blowlab/cutoffs.hpp"

#include <cmath>
#include <stdexcept>

namespace blowlab {

namespace {

// Transition coordinate u = 2s-1 in (0,1). With A = exp(-1/u) and
// C = exp(-1/(1-u)), the transition is g(u) = C/(A+C); all derivatives vanish
// at both ends so eta is C-infinity globally.
struct Transition {
    double g, g1, g2;  // value and u-derivatives
};

Transition transition(double u) {
    const double A = std::exp(-1.0 / u);
    const double C = std::exp(-1.0 / (1.0 - u));
    const double iu2 = 1.0 / (u * u);
    const double iv2 = 1.0 / ((1.0 - u) * (1.0 - u));
    const double S = iu2 + iv2;
    const double D = iu2 - iv2;
    const double Sp = -2.0 / (u * u * u) + 2.0 / ((1.0 - u) * (1.0 - u) * (1.0 - u));

    const double denom = A + C;
    const double P = A * C;
    const double Q = denom * denom;
    const double Qp = 2.0 * denom * (A * iu2 - C * iv2);
    const double Pp = P * D;

    Transition t;
    t.g = C / denom;
    t.g1 = -P * S / Q;
    t.g2 = -((Pp * S + P * Sp) * Q - P * S * Qp) / (Q * Q);
    return t;
}

} // namespace

double eta(double s) {
    if (s <= 0.5) return 1.0;
    if (s >= 1.0) return 0.0;
    return transition(2.0 * s - 1.0).g;
}

double eta_d1(double s) {
    if (s <= 0.5 || s >= 1.0) return 0.0;
    return 2.0 * transition(2.0 * s - 1.0).g1;
}

double eta_d2(double s) {
    if (s <= 0.5 || s >= 1.0) return 0.0;
    return 4.0 * transition(2.0 * s - 1.0).g2;
}

double eta_star(double s) { return s < 0.5 ? 0.0 : eta(s); }

const EtaNorms& eta_norms() {
    static const EtaNorms norms = [] {
        EtaNorms n;
        const int m = 400001;
        for (int i = 0; i <= m; ++i) {
            const double s = 0.5 + 0.5 * i / m;
            const double d1 = std::fabs(eta_d1(s));
            const double d2 = std::fabs(eta_d2(s));
            const double d2e = d2 * eta(s);
            if (d1 > n.d1_max) n.d1_max = d1;
            if (d2 > n.d2_max) n.d2_max = d2;
            if (d2e > n.d2_eta_max) n.d2_eta_max = d2e;
        }
        return n;
    }();
    return norms;
}

void CutoffSpec::validate() const {
    if (!(k >= 2.0)) throw std::domain_error("cutoff: k must be >= 2");
    if (!(R >= 1.0)) throw std::domain_error("cutoff: R must be >= 1");
}

double psi(const CutoffSpec& c, double t) {
    return std::pow(eta(t / c.R), c.k);
}

double psi_dt(const CutoffSpec& c, double t) {
    const double s = t / c.R;
    const double e = eta(s);
    if (e <= 0.0) return 0.0;
    return c.k * eta_d1(s) * std::pow(e, c.k - 1.0) / c.R;
}

double psi_dtt(const CutoffSpec& c, double t) {
    const double s = t / c.R;
    const double e = eta(s);
    if (e <= 0.0) return 0.0;
    const double d1 = eta_d1(s);
    const double d2 = eta_d2(s);
    return c.k * ((c.k - 1.0) * d1 * d1 + e * d2) * std::pow(e, c.k - 2.0) /
           (c.R * c.R);
}

double psi_star(const CutoffSpec& c, double t) {
    return std::pow(eta_star(t / c.R), c.k);
}

PsiBoundReport psi_derivative_bounds(const CutoffSpec& c, int samples) {
    c.validate();
    if (samples < 2) throw std::domain_error("cutoff bounds: samples >= 2");
    const EtaNorms& n = eta_norms();
    const double c1 = c.k * n.d1_max / c.R;
    const double c2 = c.k * ((c.k - 1.0) * n.d1_max * n.d1_max + n.d2_eta_max) /
                      (c.R * c.R);

    PsiBoundReport rep;
    for (int i = 0; i < samples; ++i) {
        const double t = c.R * i / (samples - 1.0);
        // [psi*]^{1-1/k} = (eta*)^{k-1} exactly; using the eta powers on both
        // sides keeps deep-underflow points at 0/0 instead of x/0
        const double es = eta_star(t / c.R);
        const double den1 = c1 * std::pow(es, c.k - 1.0);
        const double den2 = c2 * std::pow(es, c.k - 2.0);
        const double num1 = std::fabs(psi_dt(c, t));
        const double num2 = std::fabs(psi_dtt(c, t));
        const double r1 = num1 == 0.0 ? 0.0 : num1 / den1;
        const double r2 = num2 == 0.0 ? 0.0 : num2 / den2;
        if (r1 > rep.ratio_d1) rep.ratio_d1 = r1;
        if (r2 > rep.ratio_d2) rep.ratio_d2 = r2;
    }
    return rep;
}

} // namespace blowlab
