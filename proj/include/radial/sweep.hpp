#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace radial {

/// Index-space map for data-parallel sweeps. threads = 1 runs the plain
/// serial loop (the reference path used by tests and the benchmark);
/// threads = 0 uses all cores. Results must be written into per-index slots
/// so the merge order is deterministic; fn must not throw.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
#ifdef _OPENMP
    if (threads != 1 && count > 1) {
        const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (long i = 0; i < static_cast<long>(count); ++i) fn(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)threads;
#endif
    for (std::size_t i = 0; i < count; ++i) fn(i);
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace radial
