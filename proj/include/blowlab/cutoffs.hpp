#pragma once

namespace blowlab {

// Smooth cutoff in time: 1 on [0,1/2], a C-infinity exponential-bump
// transition on (1/2,1), 0 on [1,inf). The starred variant vanishes below 1/2
// and equals eta from 1/2 on.
double eta(double s);
double eta_d1(double s);
double eta_d2(double s);
double eta_star(double s);

// Sup norms of the transition, estimated by dense sampling. Cached after the
// first call.
struct EtaNorms {
    double d1_max = 0;       // max |eta'|
    double d2_max = 0;       // max |eta''|
    double d2_eta_max = 0;   // max |eta'' * eta|
};
const EtaNorms& eta_norms();

// psi_R(t) = eta(t/R)^k and its starred companion.
struct CutoffSpec {
    double k = 4.0;   // >= 2 (callers pick k >= 2p' for exponent p)
    double R = 1.0;   // >= 1

    void validate() const;
};

double psi(const CutoffSpec& c, double t);
double psi_dt(const CutoffSpec& c, double t);
double psi_dtt(const CutoffSpec& c, double t);
double psi_star(const CutoffSpec& c, double t);

// Worst-case ratios of |psi'| and |psi''| against their scaled starred
// envelopes, sampled on a dense t-grid over [0, R]. Both come out <= 1 up to
// rounding when the envelope constants are the eta sup norms.
struct PsiBoundReport {
    double ratio_d1 = 0;
    double ratio_d2 = 0;
};
PsiBoundReport psi_derivative_bounds(const CutoffSpec& c, int samples = 20001);

} // namespace blowlab
