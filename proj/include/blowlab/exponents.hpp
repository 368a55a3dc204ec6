#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blowlab {

// Which equation or system a run refers to.
//
//   SinglePowerU   u_tt - Lap u = a|u|^p
//   SinglePowerUt  u_tt - Lap u = b|u_t|^p
//   Combined       u_tt - Lap u = a|u|^q + b|u_t|^p
//   SystemSS       u_tt - Lap u = a|v|^p,   v_tt - Lap v = b|u|^q
//   SystemGG       u_tt - Lap u = a|v_t|^p, v_tt - Lap v = b|u_t|^q
//   SystemSG       u_tt - Lap u = a|v|^q,   v_tt - Lap v = b|u_t|^p
enum class ProblemKind {
    SinglePowerU,
    SinglePowerUt,
    Combined,
    SystemSS,
    SystemGG,
    SystemSG,
};

bool kind_uses_q(ProblemKind k);
bool kind_is_system(ProblemKind k);
const char* kind_name(ProblemKind k);
ProblemKind kind_from_name(const std::string& name);

struct ProblemSpec {
    ProblemKind kind = ProblemKind::SinglePowerU;
    int dim = 1;        // spatial dimension N >= 1
    double p = 2.0;     // > 1
    double q = 2.0;     // > 1 where used
    double a = 1.0;     // nonlinearity lower-bound coefficients, > 0
    double b = 1.0;

    void validate() const;  // throws std::domain_error on bad fields
};

// --- critical exponents -----------------------------------------------------

// 2 + (N+1)p - (N-1)p^2; positive exactly on the subcritical range p < p_strauss(N).
double strauss_quadratic(int N, double p);

// Positive root of the Strauss quadratic; +infinity for N = 1.
double strauss_critical_p(int N);

// (N+1)/(N-1); +infinity for N = 1.
double glassey_critical_p(int N);

// Lifespan margins. A margin M > 0 predicts a power law T <= C eps^{-1/M};
// M = 0 is the critical (exponential-lifespan) curve.
double strauss_margin(int N, double p);                   // quadratic / (2p(p-1))
double glassey_margin(int N, double p);                   // 1/(p-1) - (N-1)/2
double combined_margin(int N, double p, double q);        // (q+1)/(p(q-1)) - (N-1)/2
double ss_margin(int N, double p, double q);              // (p+2+1/q)/(pq-1) - (N-1)/2
double gg_margin(int N, double p, double q);              // (p+1)/(pq-1) - (N-1)/2
double sg_margin_first(int N, double p, double q);        // (1/p+1+q)/(pq-1) - (N-1)/2
double sg_margin_second(int N, double p, double q);       // (2+1/q)/(pq-1) - (N-1)/2

// Sign of a margin with the criticality tolerance: |x| <= 1e-12 counts as
// zero. Sets *near_critical when |x| <= 1e-9 (criticality is measure-zero,
// so exact hits are reported with a warning flag rather than trusted).
int critical_sign(double x, bool* near_critical = nullptr);

// All margins applicable to a problem kind, for reports and plots.
struct ExponentSuite {
    std::optional<double> strauss_quadratic;   // at the |u| power
    std::optional<double> strauss_critical_p;
    std::optional<double> glassey_critical_p;
    std::optional<double> strauss;             // margin at the |u| power
    std::optional<double> glassey;             // margin at the |u_t| power
    std::optional<double> combined;
    std::optional<double> ss_pq, ss_qp, ss_max;
    std::optional<double> gg_pq, gg_qp, gg_max;
    std::optional<double> sg_first, sg_second, sg_max;
};

ExponentSuite exponent_suite(const ProblemSpec& spec);

// --- lifespan law classification --------------------------------------------

// PowerLaw:     T <= C eps^{-1/exponent}            (exponent = the margin)
// Exponential:  T <= exp(C eps^{-exponent})
// LogCorrected: the PowerLaw bound for (SinglePowerU, N=2, p=2) together with
//               the refined scale a(eps) solving a^2 eps^2 log(1+a) = 1,
//               reported as metadata without replacing the power-law bound.
// NoClaim:      every applicable margin is negative; nothing is claimed.
enum class LawForm { PowerLaw, Exponential, LogCorrected, NoClaim };

const char* law_form_name(LawForm f);

struct LifespanLaw {
    LawForm form = LawForm::NoClaim;
    double exponent = 0.0;
    std::string binding_condition;             // tag of the case that decided
    std::vector<std::string> matching_cases;   // all case tags that matched
    bool near_critical = false;
    std::optional<double> log_refined_scale;   // a(eps), LogCorrected only
};

// Case analysis for the given problem. The optional epsilon only feeds the
// LogCorrected metadata; the law itself never depends on it (nor on a, b).
LifespanLaw classify(const ProblemSpec& spec,
                     std::optional<double> epsilon = std::nullopt);

// --- critical curves in the (p,q) plane -------------------------------------

struct CurvePoint {
    double p = 0, q = 0;
    double residual = 0;   // |margin(N,p,q)| at the root
};

struct CriticalCurve {
    std::vector<CurvePoint> points;          // binding margin = 0
    std::vector<CurvePoint> second_points;   // SystemSG only: second curve
    std::optional<std::pair<double, double>> intersection;  // SystemSG only
};

// For each sampled p in [p_lo, p_hi], bisects the q with margin(N,p,q) = 0
// (tolerance 1e-12). SystemSG traces both curves and their intersection.
// Throws std::runtime_error when no sampled p yields a root.
CriticalCurve trace_critical_curve(ProblemKind kind, int N, double p_lo,
                                   double p_hi, int resolution);

} // namespace blowlab
