#pragma once

namespace blowlab {

// Hypotheses of the critical-case lifespan lemma: a nondecreasing scalar
// phi on (t0, T) with
//   delta      <= K1 * t * phi'(t)
//   phi^{p1}   <= K2 * t * (log t)^{p2-1} * phi'(t)
// and p2 < p1 + 1. The conclusion bounds T by exp(K3 delta^{-(p1-1)/(p1-p2+1)}).
struct OdiParams {
    double delta = 0.1;
    double K1 = 1.0;
    double K2 = 1.0;
    double p1 = 2.0;
    double p2 = 2.0;
    double t0 = 3.0;  // > 2

    void validate() const;  // throws std::domain_error, incl. p2 >= p1+1
};

// Closed form of the interval integral of sigma^{1-p2} over [1/2, 1]
// (log 2 at p2 = 2).
double segment_integral(double p2);

// The bound with the constant assembled from the proof:
//   K3 = [ (4 K1)^{p1-1} K2 / ((p1-1) * segment_integral(p2)) ]^{1/(1+p1-p2)}
// and bound = max(t0^4, exp(K3 delta^{-(p1-1)/(p1-p2+1)})); the first branch
// covers small lifespans handled separately in the proof.
struct LifespanBound {
    double K3 = 0;
    double log_bound = 0;  // log of the bound, always finite
    double bound = 0;      // +inf when it overflows a double
};
LifespanBound lifespan_bound(const OdiParams& params);

// Integrates the slowest-growing phi consistent with both hypotheses,
//   phi'(t) = max(delta/(K1 t), phi^{p1}/(K2 t (log t)^{p2-1})),  phi(t0)=0,
// with an adaptive embedded Runge-Kutta pair (relative tolerance rtol) in
// logarithmic time, and reports the first time phi exceeds 1e12. The lemma
// guarantees log_T <= lifespan_bound(...).log_bound; exceeding ten times the
// bound raises std::runtime_error (it would mean a defect in this module).
struct OdeBlowup {
    double log_T = 0;
    double T = 0;      // +inf when log_T overflows a double
    long steps = 0;
};
OdeBlowup extremal_ode_simulate(const OdiParams& params, double rtol = 1e-8);

} // namespace blowlab
