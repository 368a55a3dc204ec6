#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blowlab {

// Execution policy for the data-parallel kernels. Serial is the reference
// path; Parallel uses OpenMP when compiled in and falls back to the serial
// loop otherwise. Both paths must produce bit-identical results.
enum class Exec { Serial, Parallel };

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class F>
void parallel_for(Exec mode, std::size_t n, F&& body) {
#ifdef _OPENMP
    if (mode == Exec::Parallel) {
        #pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// Sum with a deterministic accumulation order: terms are written per index
// and added serially, so the result does not depend on the thread count.
template <class F>
double deterministic_sum(Exec mode, std::size_t n, F&& term) {
    std::vector<double> partial(n);
    parallel_for(mode, n, [&](std::size_t i) { partial[i] = term(i); });
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
}

template <class F>
double deterministic_max(Exec mode, std::size_t n, F&& term) {
    std::vector<double> partial(n);
    parallel_for(mode, n, [&](std::size_t i) { partial[i] = term(i); });
    double m = partial.empty() ? 0.0 : partial[0];
    for (double v : partial)
        if (v > m) m = v;
    return m;
}

} // namespace blowlab
