#include "blowlab/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace blowlab {

void SweepPlan::validate() const {
    spec.validate();
    if (epsilons.empty())
        throw AggregationError("sweep: no epsilon values supplied");
    for (double e : epsilons)
        if (!(e > 0.0)) throw std::domain_error("sweep: epsilons must be > 0");
    if (workers < 1) throw std::domain_error("sweep: workers must be >= 1");
}

SweepResult run_sweep(const SweepPlan& plan,
                      const std::function<void(const SweepRecord&)>& on_record) {
    plan.validate();
    std::vector<double> eps = plan.epsilons;
    std::sort(eps.begin(), eps.end(), std::greater<>());

    const int n = static_cast<int>(eps.size());
    std::vector<SweepRecord> records(n);
    const int workers = plan.workers;
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic) num_threads(workers) \
        if (workers > 1)
#endif
    for (int i = 0; i < n; ++i) {
        SolverConfig cfg = plan.base;
        cfg.spec = plan.spec;
        cfg.epsilon = eps[i];
        if (workers > 1) cfg.exec = Exec::Serial;  // no nested parallelism
        SweepRecord rec;
        rec.epsilon = eps[i];
        try {
            const LifespanMeasurement m = measure_lifespan(cfg);
            rec.T_num = m.T_num;
            rec.certified = m.certified;
            rec.ratio = m.ratio;
            rec.cause = m.cause;
        } catch (const std::exception&) {
            rec.certified = false;
            rec.cause = BlowupCause::None;
        }
        records[i] = rec;
    }

    SweepResult out;
    out.records = records;
    for (const SweepRecord& rec : out.records) {
        if (on_record) on_record(rec);
        if (rec.certified) ++out.certified;
    }
    // certified lifespans must not decrease as epsilon shrinks
    double last_T = 0.0;
    for (const SweepRecord& rec : out.records) {
        if (!rec.certified) continue;
        if (rec.T_num < last_T * (1.0 - 1e-9)) out.monotone_ok = false;
        last_T = rec.T_num;
    }
    if (out.certified < 4)
        throw AggregationError("sweep: fewer than 4 certified records");
    return out;
}

const char* fit_model_name(FitModel m) {
    return m == FitModel::PowerLaw ? "logT~logeps" : "loglogT~logeps";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "consistent";
        case Verdict::Inconsistent: return "inconsistent";
        case Verdict::Underpowered: return "underpowered";
    }
    return "?";
}

FitResult fit_scaling(const std::vector<SweepRecord>& records,
                      const LifespanLaw& law, double tol_rel) {
    if (law.form == LawForm::NoClaim)
        throw std::domain_error("fit: the classifier made no claim to fit against");
    const bool exponential = law.form == LawForm::Exponential;

    std::vector<double> x, y, logT;
    for (const SweepRecord& rec : records) {
        if (!rec.certified || !(rec.T_num > 0.0)) continue;
        const double lt = std::log(rec.T_num);
        if (exponential && !(lt > 0.0)) continue;  // log log needs T > 1
        x.push_back(std::log(rec.epsilon));
        y.push_back(exponential ? std::log(lt) : lt);
        logT.push_back(lt);
    }
    if (x.size() < 4)
        throw AggregationError("fit: fewer than 4 certified records");

    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::runtime_error("fit: zero variance in epsilon");

    FitResult fit;
    fit.model = exponential ? FitModel::Exponential : FitModel::PowerLaw;
    fit.alpha_hat = sxy / sxx;
    fit.intercept = my - fit.alpha_hat * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (fit.intercept + fit.alpha_hat * x[i]);
        ssr += e * e;
    }
    fit.stderr_alpha = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
    fit.n_used = static_cast<int>(n);

    const auto [min_lt, max_lt] = std::minmax_element(logT.begin(), logT.end());
    fit.decades_T = (*max_lt - *min_lt) / std::log(10.0);
    const auto [min_x, max_x] = std::minmax_element(x.begin(), x.end());
    fit.decades_eps = (*max_x - *min_x) / std::log(10.0);

    fit.predicted_alpha = exponential ? -law.exponent : -1.0 / law.exponent;
    const bool underpowered =
        fit.decades_eps < 1.0 - 1e-9 || (exponential && fit.decades_T < 3.0);
    if (underpowered) {
        fit.verdict = Verdict::Underpowered;
    } else {
        const bool ok = std::fabs(fit.alpha_hat - fit.predicted_alpha) <=
                        tol_rel * std::fabs(fit.predicted_alpha);
        fit.verdict = ok ? Verdict::Consistent : Verdict::Inconsistent;
    }
    return fit;
}

} // namespace blowlab
