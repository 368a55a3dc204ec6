#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "blowlab/exponents.hpp"
#include "blowlab/wave_solver.hpp"

namespace blowlab {

struct SweepPlan {
    ProblemSpec spec;
    std::vector<double> epsilons;   // positive, any order; sorted internally
    SolverConfig base;              // template; epsilon is overwritten per run
    double tol_rel = 0.2;           // consistency tolerance for the fit
    int workers = 1;                // concurrent lifespan measurements

    void validate() const;
};

struct SweepRecord {
    double epsilon = 0;
    double T_num = 0;
    bool certified = false;
    double ratio = 0;          // grid-convergence ratio from the certificate
    BlowupCause cause = BlowupCause::None;
};

struct SweepResult {
    std::vector<SweepRecord> records;  // sorted by decreasing epsilon
    int certified = 0;
    bool monotone_ok = true;   // T nondecreasing as epsilon decreases
};

class AggregationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Measures the lifespan for every epsilon (optionally in parallel) and
// reports all records; non-converged runs stay in the output but do not
// count as certified. Throws AggregationError when fewer than four certified
// records remain; on_record fires as each run finishes so callers can
// persist partial output first.
SweepResult run_sweep(const SweepPlan& plan,
                      const std::function<void(const SweepRecord&)>& on_record = {});

enum class FitModel { PowerLaw, Exponential };
enum class Verdict { Consistent, Inconsistent, Underpowered };

const char* fit_model_name(FitModel m);
const char* verdict_name(Verdict v);

struct FitResult {
    FitModel model = FitModel::PowerLaw;
    double alpha_hat = 0;
    double stderr_alpha = 0;
    double intercept = 0;
    double predicted_alpha = 0;  // -1/margin for power laws, -a for exponentials
    Verdict verdict = Verdict::Underpowered;
    int n_used = 0;
    double decades_T = 0;        // log10 span of the certified lifespans
    double decades_eps = 0;
};

// Ordinary least squares in the coordinates dictated by the law:
// log T against log eps for power laws (and the log-corrected refinement),
// log log T against log eps for exponentials. Exponential fits are flagged
// underpowered unless the lifespans span three decades; every fit is flagged
// underpowered when the epsilons span less than one decade.
FitResult fit_scaling(const std::vector<SweepRecord>& records,
                      const LifespanLaw& law, double tol_rel);

} // namespace blowlab
