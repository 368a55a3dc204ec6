#pragma once

#include <string>
#include <vector>

#include "blowlab/exponents.hpp"
#include "blowlab/hypergeometric.hpp"
#include "blowlab/ode_lemma.hpp"
#include "blowlab/quadrature.hpp"
#include "blowlab/sweep.hpp"
#include "blowlab/verify.hpp"
#include "blowlab/wave_solver.hpp"

// Deterministic text emission: all numbers go through one %.17g formatter and
// JSON keys keep insertion order, so identical inputs yield identical bytes.
namespace blowlab::report {

inline constexpr int kSchemaVersion = 1;

std::string format_double(double v);

std::string classify_json(const ProblemSpec& spec, const ExponentSuite& suite,
                          const LifespanLaw& law);
std::string curve_json(ProblemKind kind, int N, const CriticalCurve& curve);
std::string curve_csv(const CriticalCurve& curve);
std::string phi_point_json(const PhiSpec& spec, double r, double t, double value,
                           double dt, double dr);
std::string scale_csv(const std::vector<ScalePoint>& points, const SlopeFit& fit);
std::string ode_sweep_csv(const std::vector<double>& deltas,
                          const std::vector<OdeBlowup>& blows,
                          const std::vector<LifespanBound>& bounds);
std::string blowup_report_json(const SolverConfig& config, const BlowupReport& rep);
std::string trace_csv(const Trace& trace);
std::string sweep_csv(const std::vector<SweepRecord>& records);
std::string fit_json(const FitResult& fit, const LifespanLaw& law);
std::string verify_json(const VerifyReport& rep);

void write_file(const std::string& path, const std::string& content);

} // namespace blowlab::report
