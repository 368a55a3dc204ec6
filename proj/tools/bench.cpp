// Times the serial reference paths against the OpenMP kernels and checks
// that both produce identical bytes. Run manually: build/tools/blowlab_bench

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "blowlab/quadrature.hpp"
#include "blowlab/wave_solver.hpp"

using namespace blowlab;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// Large enough that the spatial loop amortizes the per-step fork-join; on
// small grids the serial reference wins and simulate should be run serial.
SolveResult run_solver(Exec exec) {
    SolverConfig cfg;
    cfg.spec = {ProblemKind::SinglePowerU, 3, 2.0, 2.0, 1.0, 1.0};
    cfg.data = {DataFamily::Bump, 1.0, 1.0, 1.0};
    cfg.epsilon = 0.05;
    cfg.dr = 0.0005;
    cfg.cfl = 0.4;
    cfg.t_max = 2.0;
    cfg.r_max = 16.0;
    cfg.keep_traces = false;
    cfg.exec = exec;
    return simulate(cfg);
}

SpaceTimeField big_field() {
    SpaceTimeField field;
    field.dim = 3;
    field.r0 = 1.0;
    const int nrr = 1201, ntt = 601;
    for (int i = 0; i < nrr; ++i) field.r.push_back(i * (24.0 / (nrr - 1)));
    for (int j = 0; j < ntt; ++j) field.t.push_back(j * (20.0 / (ntt - 1)));
    field.w.assign(std::size_t(nrr) * ntt, 0.0);
    for (int j = 0; j < ntt; ++j)
        for (int i = 0; i < nrr; ++i) {
            const double t = field.t[j], r = field.r[i];
            if (r <= 1.0 + t)
                field.at(j, i) = std::exp(-r) * (1.0 + std::sin(t) * std::sin(t));
        }
    return field;
}

} // namespace

int main() {
    std::printf("threads available: %d\n\n", hardware_threads());

    {
        auto t0 = clock_type::now();
        const SolveResult serial = run_solver(Exec::Serial);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const SolveResult parallel = run_solver(Exec::Parallel);
        const double tp = seconds_since(t0);
        const double T1 = serial.report.T_num.value_or(-1.0);
        const double T2 = parallel.report.T_num.value_or(-1.0);
        std::printf("wave step kernel   serial %7.3fs  openmp %7.3fs  speedup %.2fx  %s\n",
                    ts, tp, ts / tp, T1 == T2 ? "identical" : "MISMATCH");
    }
    {
        const SpaceTimeField field = big_field();
        CutoffSpec cutoff{4.0, 16.0};
        auto t0 = clock_type::now();
        const double vs =
            spacetime_integral(field, WeightKind::PsiStar, cutoff, nullptr,
                               Exec::Serial, 513);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const double vp =
            spacetime_integral(field, WeightKind::PsiStar, cutoff, nullptr,
                               Exec::Parallel, 513);
        const double tp = seconds_since(t0);
        std::printf("tensor quadrature  serial %7.3fs  openmp %7.3fs  speedup %.2fx  %s\n",
                    ts, tp, ts / tp, vs == vp ? "identical" : "MISMATCH");
    }
    {
        PhiSpec spec{1.2, 1.5, 3};
        std::vector<double> Rs{64.0, 128.0, 256.0, 512.0};
        auto t0 = clock_type::now();
        const auto ps = phi_slab_integrals(spec, 2.0, Rs, 65, 241, Exec::Serial);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto pp = phi_slab_integrals(spec, 2.0, Rs, 65, 241, Exec::Parallel);
        const double tp = seconds_since(t0);
        bool same = true;
        for (std::size_t i = 0; i < ps.size(); ++i)
            same = same && ps[i].value == pp[i].value;
        std::printf("slab integrals     serial %7.3fs  openmp %7.3fs  speedup %.2fx  %s\n",
                    ts, tp, ts / tp, same ? "identical" : "MISMATCH");
    }
    return 0;
}
