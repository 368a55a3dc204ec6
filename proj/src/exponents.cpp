#include "blowlab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace blowlab {

namespace {

constexpr double kZeroTol = 1e-12;
constexpr double kWarnTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

} // namespace

bool kind_uses_q(ProblemKind k) {
    return k != ProblemKind::SinglePowerU && k != ProblemKind::SinglePowerUt;
}

bool kind_is_system(ProblemKind k) {
    return k == ProblemKind::SystemSS || k == ProblemKind::SystemGG ||
           k == ProblemKind::SystemSG;
}

const char* kind_name(ProblemKind k) {
    switch (k) {
        case ProblemKind::SinglePowerU: return "single-u";
        case ProblemKind::SinglePowerUt: return "single-ut";
        case ProblemKind::Combined: return "combined";
        case ProblemKind::SystemSS: return "system-ss";
        case ProblemKind::SystemGG: return "system-gg";
        case ProblemKind::SystemSG: return "system-sg";
    }
    return "?";
}

ProblemKind kind_from_name(const std::string& name) {
    if (name == "single-u") return ProblemKind::SinglePowerU;
    if (name == "single-ut") return ProblemKind::SinglePowerUt;
    if (name == "combined") return ProblemKind::Combined;
    if (name == "system-ss") return ProblemKind::SystemSS;
    if (name == "system-gg") return ProblemKind::SystemGG;
    if (name == "system-sg") return ProblemKind::SystemSG;
    throw std::domain_error("unknown problem kind: " + name);
}

void ProblemSpec::validate() const {
    require(dim >= 1, "dimension must be >= 1");
    require(p > 1.0 && std::isfinite(p), "power p must be > 1");
    if (kind_uses_q(kind))
        require(q > 1.0 && std::isfinite(q), "power q must be > 1");
    require(a > 0.0 && b > 0.0, "coefficients a, b must be > 0");
}

double strauss_quadratic(int N, double p) {
    require(N >= 1, "dimension must be >= 1");
    require(p > 1.0, "power p must be > 1");
    return 2.0 + (N + 1.0) * p - (N - 1.0) * p * p;
}

double strauss_critical_p(int N) {
    require(N >= 1, "dimension must be >= 1");
    if (N == 1) return kInf;
    // positive root of (N-1)p^2 - (N+1)p - 2 = 0
    const double disc = double(N) * N + 10.0 * N - 7.0;
    return ((N + 1.0) + std::sqrt(disc)) / (2.0 * (N - 1.0));
}

double glassey_critical_p(int N) {
    require(N >= 1, "dimension must be >= 1");
    if (N == 1) return kInf;
    return (N + 1.0) / (N - 1.0);
}

double strauss_margin(int N, double p) {
    return strauss_quadratic(N, p) / (2.0 * p * (p - 1.0));
}

double glassey_margin(int N, double p) {
    require(N >= 1, "dimension must be >= 1");
    require(p > 1.0, "power p must be > 1");
    return 1.0 / (p - 1.0) - (N - 1.0) / 2.0;
}

double combined_margin(int N, double p, double q) {
    require(N >= 1 && p > 1.0 && q > 1.0, "combined margin needs N>=1, p,q>1");
    return (q + 1.0) / (p * (q - 1.0)) - (N - 1.0) / 2.0;
}

double ss_margin(int N, double p, double q) {
    require(N >= 1 && p > 1.0 && q > 1.0, "ss margin needs N>=1, p,q>1");
    return (p + 2.0 + 1.0 / q) / (p * q - 1.0) - (N - 1.0) / 2.0;
}

double gg_margin(int N, double p, double q) {
    require(N >= 1 && p > 1.0 && q > 1.0, "gg margin needs N>=1, p,q>1");
    return (p + 1.0) / (p * q - 1.0) - (N - 1.0) / 2.0;
}

double sg_margin_first(int N, double p, double q) {
    require(N >= 1 && p > 1.0 && q > 1.0, "sg margin needs N>=1, p,q>1");
    return (1.0 / p + 1.0 + q) / (p * q - 1.0) - (N - 1.0) / 2.0;
}

double sg_margin_second(int N, double p, double q) {
    require(N >= 1 && p > 1.0 && q > 1.0, "sg margin needs N>=1, p,q>1");
    return (2.0 + 1.0 / q) / (p * q - 1.0) - (N - 1.0) / 2.0;
}

int critical_sign(double x, bool* near_critical) {
    if (near_critical && std::fabs(x) <= kWarnTol) *near_critical = true;
    if (std::fabs(x) <= kZeroTol) return 0;
    return x > 0 ? 1 : -1;
}

ExponentSuite exponent_suite(const ProblemSpec& spec) {
    spec.validate();
    const int N = spec.dim;
    ExponentSuite s;
    switch (spec.kind) {
        case ProblemKind::SinglePowerU:
            s.strauss_quadratic = strauss_quadratic(N, spec.p);
            s.strauss_critical_p = strauss_critical_p(N);
            s.strauss = strauss_margin(N, spec.p);
            break;
        case ProblemKind::SinglePowerUt:
            s.glassey_critical_p = glassey_critical_p(N);
            s.glassey = glassey_margin(N, spec.p);
            break;
        case ProblemKind::Combined:
            // q is the |u| power, p the |u_t| power
            s.strauss_quadratic = strauss_quadratic(N, spec.q);
            s.strauss_critical_p = strauss_critical_p(N);
            s.glassey_critical_p = glassey_critical_p(N);
            s.strauss = strauss_margin(N, spec.q);
            s.glassey = glassey_margin(N, spec.p);
            s.combined = combined_margin(N, spec.p, spec.q);
            break;
        case ProblemKind::SystemSS:
            s.ss_pq = ss_margin(N, spec.p, spec.q);
            s.ss_qp = ss_margin(N, spec.q, spec.p);
            s.ss_max = std::max(*s.ss_pq, *s.ss_qp);
            break;
        case ProblemKind::SystemGG:
            s.gg_pq = gg_margin(N, spec.p, spec.q);
            s.gg_qp = gg_margin(N, spec.q, spec.p);
            s.gg_max = std::max(*s.gg_pq, *s.gg_qp);
            break;
        case ProblemKind::SystemSG:
            s.sg_first = sg_margin_first(N, spec.p, spec.q);
            s.sg_second = sg_margin_second(N, spec.p, spec.q);
            s.sg_max = std::max(*s.sg_first, *s.sg_second);
            break;
    }
    return s;
}

const char* law_form_name(LawForm f) {
    switch (f) {
        case LawForm::PowerLaw: return "power-law";
        case LawForm::Exponential: return "exponential";
        case LawForm::LogCorrected: return "log-corrected";
        case LawForm::NoClaim: return "no-claim";
    }
    return "?";
}

namespace {

LifespanLaw power_law(double margin, std::string tag, bool near) {
    LifespanLaw law;
    law.form = LawForm::PowerLaw;
    law.exponent = margin;
    law.binding_condition = tag;
    law.matching_cases = {std::move(tag)};
    law.near_critical = near;
    return law;
}

LifespanLaw exp_law(double a, std::string tag, bool near) {
    LifespanLaw law;
    law.form = LawForm::Exponential;
    law.exponent = a;
    law.binding_condition = tag;
    law.matching_cases = {std::move(tag)};
    law.near_critical = near;
    return law;
}

LifespanLaw no_claim(std::string tag, bool near) {
    LifespanLaw law;
    law.form = LawForm::NoClaim;
    law.binding_condition = tag;
    law.near_critical = near;
    return law;
}

// Solves s^2 eps^2 log(1+s) = 1 for s > 0 (monotone in s).
double refined_scale(double eps) {
    double lo = 0.0, hi = 1.0;
    auto f = [eps](double s) { return s * s * eps * eps * std::log1p(s) - 1.0; };
    while (f(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

LifespanLaw classify_single_u(const ProblemSpec& spec,
                              std::optional<double> epsilon) {
    const int N = spec.dim;
    const double p = spec.p;
    bool near = false;

    if (N == 1)
        return power_law(2.0 / (p - 1.0), "single-u:N=1", false);
    if (N == 2 && p <= 2.0 + kZeroTol) {
        const bool at_two = std::fabs(p - 2.0) <= kZeroTol;
        double margin = (3.0 - p) / (p - 1.0);
        if (at_two) {
            LifespanLaw law = power_law(margin, "single-u:log-refined", false);
            law.form = LawForm::LogCorrected;
            if (epsilon && *epsilon > 0.0)
                law.log_refined_scale = refined_scale(*epsilon);
            return law;
        }
        return power_law(margin, "single-u:N=2-low-p", false);
    }
    const int sgn = critical_sign(strauss_margin(N, p), &near);
    if (sgn > 0)
        return power_law(strauss_margin(N, p), "single-u:subcritical", near);
    if (sgn == 0)
        return exp_law(p * (p - 1.0), "single-u:critical", near);
    return no_claim("single-u:supercritical", near);
}

LifespanLaw classify_single_ut(const ProblemSpec& spec) {
    const int N = spec.dim;
    const double p = spec.p;
    bool near = false;
    const int sgn = critical_sign(glassey_margin(N, p), &near);
    if (sgn > 0)
        return power_law(glassey_margin(N, p), "single-ut:subcritical", near);
    if (sgn == 0)
        return exp_law(p - 1.0, "single-ut:critical", near);
    return no_claim("single-ut:supercritical", near);
}

// Combined nonlinearity a|u|^q + b|u_t|^p. The five cases are checked in the
// order listed by the source case analysis; overlapping matches are all
// reported and the first one binds.
LifespanLaw classify_combined(const ProblemSpec& spec) {
    const int N = spec.dim;
    const double p = spec.p, q = spec.q;
    bool near = false;

    const int sgn_gla_p = critical_sign(glassey_margin(N, p), &near);
    const int sgn_str_q = critical_sign(strauss_margin(N, q), &near);
    const int sgn_comb = critical_sign(combined_margin(N, p, q), &near);

    const bool hypothesis = sgn_str_q >= 0 || sgn_gla_p >= 0 || sgn_comb > 0;
    if (!hypothesis) return no_claim("combined:no-claim", near);

    struct Case {
        bool match;
        LifespanLaw law;
    };
    std::vector<Case> cases;
    // 1: derivative power critical, u power above the mixed range
    cases.push_back({sgn_gla_p == 0 && N >= 2 && q > 1.0 + 4.0 / (N - 1.0),
                     exp_law(p - 1.0, "combined:ut-critical", near)});
    // 2: derivative power subcritical and dominant
    cases.push_back({sgn_gla_p > 0 && q > 2.0 * p - 1.0,
                     power_law(glassey_margin(N, p), "combined:ut-subcritical", near)});
    // 3: genuinely mixed range
    cases.push_back({p <= q && q <= 2.0 * p - 1.0 && sgn_comb > 0,
                     power_law(combined_margin(N, p, q), "combined:mixed", near)});
    // 4: u power subcritical and dominant
    cases.push_back({p > q && critical_sign(strauss_margin(N, q)) > 0,
                     power_law(strauss_margin(N, q), "combined:u-subcritical", near)});
    // 5: u power critical
    cases.push_back({p >= q && sgn_str_q == 0,
                     exp_law(q * (q - 1.0), "combined:u-critical", near)});

    LifespanLaw result;
    bool have = false;
    std::vector<std::string> matches;
    for (const Case& c : cases) {
        if (!c.match) continue;
        matches.push_back(c.law.binding_condition);
        if (!have) {
            result = c.law;
            have = true;
        }
    }
    if (!have) return no_claim("combined:no-matching-case", near);
    result.matching_cases = matches;
    return result;
}

LifespanLaw classify_pair_system(const ProblemSpec& spec,
                                 const std::function<double(int, double, double)>& margin,
                                 const char* prefix, bool gg_style) {
    const int N = spec.dim;
    const double p = spec.p, q = spec.q;
    bool near = false;

    const double m_pq = margin(N, p, q);
    const double m_qp = margin(N, q, p);
    const double m = std::max(m_pq, m_qp);
    const int sgn = critical_sign(m, &near);
    const std::string pre(prefix);
    if (sgn > 0) return power_law(m, pre + ":subcritical", near);
    if (sgn < 0) return no_claim(pre + ":no-claim", near);

    if (std::fabs(p - q) <= kZeroTol) {
        const double a = gg_style ? (p - 1.0) : p * (p - 1.0);
        return exp_law(a, pre + ":critical-equal", near);
    }
    const double a = gg_style ? (p * q - 1.0) : std::min(p, q) * (p * q - 1.0);
    return exp_law(a, pre + ":critical-unequal", near);
}

LifespanLaw classify_sg(const ProblemSpec& spec) {
    const int N = spec.dim;
    const double p = spec.p, q = spec.q;
    bool near = false;

    const double f1 = sg_margin_first(N, p, q);
    const double f2 = sg_margin_second(N, p, q);
    const int s1 = critical_sign(f1, &near);
    const int s2 = critical_sign(f2, &near);

    if (std::max(s1, s2) > 0)
        return power_law(std::max(f1, f2), "sg:subcritical", near);
    if (s1 == 0 && s2 < 0)
        return exp_law(p * (p * q - 1.0), "sg:first-critical", near);
    if (s1 < 0 && s2 == 0)
        return exp_law(q * (p * q - 1.0), "sg:second-critical", near);
    if (s1 == 0 && s2 == 0)
        return exp_law(p * q - 1.0, "sg:double-critical", near);
    return no_claim("sg:no-claim", near);
}

} // namespace

LifespanLaw classify(const ProblemSpec& spec, std::optional<double> epsilon) {
    spec.validate();
    switch (spec.kind) {
        case ProblemKind::SinglePowerU: return classify_single_u(spec, epsilon);
        case ProblemKind::SinglePowerUt: return classify_single_ut(spec);
        case ProblemKind::Combined: return classify_combined(spec);
        case ProblemKind::SystemSS:
            return classify_pair_system(spec, ss_margin, "ss", false);
        case ProblemKind::SystemGG:
            return classify_pair_system(spec, gg_margin, "gg", true);
        case ProblemKind::SystemSG: return classify_sg(spec);
    }
    throw std::domain_error("unreachable problem kind");
}

namespace {

// Bisects f over [lo, hi] assuming a sign change; polishes until the interval
// is at rounding level so the residual lands well under 1e-12.
double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Scans q over a log grid until the margin changes sign, then bisects.
std::optional<double> root_in_q(const std::function<double(double)>& f,
                                double q_lo, double q_hi, int scan) {
    double prev_q = q_lo, prev_f = f(q_lo);
    if (prev_f == 0.0) return q_lo;
    const double ratio = std::pow(q_hi / q_lo, 1.0 / scan);
    double cur_q = q_lo;
    for (int i = 1; i <= scan; ++i) {
        cur_q *= ratio;
        double cur_f = f(cur_q);
        if (cur_f == 0.0) return cur_q;
        if ((cur_f > 0) != (prev_f > 0))
            return bisect_root(f, prev_q, cur_q);
        prev_q = cur_q;
        prev_f = cur_f;
    }
    return std::nullopt;
}

} // namespace

CriticalCurve trace_critical_curve(ProblemKind kind, int N, double p_lo,
                                   double p_hi, int resolution) {
    if (resolution < 2) throw std::domain_error("resolution must be >= 2");
    if (!(p_lo > 1.0) || !(p_hi > p_lo))
        throw std::domain_error("need 1 < p_lo < p_hi");
    if (kind != ProblemKind::Combined && !kind_is_system(kind))
        throw std::domain_error("curve tracing needs a coupled kind");

    const double q_min = 1.0 + 1e-8, q_max = 64.0;
    auto margin_for = [&](ProblemKind k) {
        return std::function<double(double, double)>([k, N](double p, double q) {
            switch (k) {
                case ProblemKind::Combined: return combined_margin(N, p, q);
                case ProblemKind::SystemSS:
                    return std::max(ss_margin(N, p, q), ss_margin(N, q, p));
                case ProblemKind::SystemGG:
                    return std::max(gg_margin(N, p, q), gg_margin(N, q, p));
                default: return sg_margin_first(N, p, q);
            }
        });
    };

    CriticalCurve curve;
    auto trace_one = [&](const std::function<double(double, double)>& m,
                         std::vector<CurvePoint>& out) {
        for (int i = 0; i < resolution; ++i) {
            const double p = p_lo + (p_hi - p_lo) * i / (resolution - 1);
            auto fq = [&](double q) { return m(p, q); };
            if (auto q = root_in_q(fq, q_min, q_max, 512))
                out.push_back({p, *q, std::fabs(m(p, *q))});
        }
    };

    trace_one(margin_for(kind), curve.points);
    if (kind == ProblemKind::SystemSG) {
        trace_one([N](double p, double q) { return sg_margin_second(N, p, q); },
                  curve.second_points);
        // On the intersection both margins vanish; eliminating p gives
        // p = q/(q+1-q^2) on 1 < q < (1+sqrt(5))/2, then one margin is a
        // one-variable function of q with a guaranteed sign change.
        const double golden = 0.5 * (1.0 + std::sqrt(5.0));
        auto g = [&](double q) {
            const double denom = q + 1.0 - q * q;
            const double p = q / denom;
            return sg_margin_first(N, p, q);
        };
        double q = bisect_root(g, 1.0 + 1e-9, golden - 1e-9);
        double p = q / (q + 1.0 - q * q);
        curve.intersection = std::make_pair(p, q);
    }
    if (curve.points.empty() && curve.second_points.empty())
        throw std::runtime_error("critical curve does not cross the sampled range");
    return curve;
}

} // namespace blowlab
