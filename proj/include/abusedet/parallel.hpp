#pragma once

#include <cstddef>

#ifdef ABUSEDET_HAVE_OPENMP
#include <omp.h>
#endif

namespace abusedet {

// Runs fn(i) for i in [begin, end). jobs <= 1 uses the serial reference path;
// larger values fan out with OpenMP when available. Work items must write to
// disjoint slots so results never depend on the schedule.
template <typename Fn>
void parallel_for(size_t begin, size_t end, size_t jobs, const Fn& fn) {
#ifdef ABUSEDET_HAVE_OPENMP
    if (jobs > 1 && end > begin + 1) {
        int threads = static_cast<int>(jobs);
        #pragma omp parallel for num_threads(threads) schedule(dynamic)
        for (ptrdiff_t i = static_cast<ptrdiff_t>(begin); i < static_cast<ptrdiff_t>(end); ++i)
            fn(static_cast<size_t>(i));
        return;
    }
#else
    (void)jobs;
#endif
    for (size_t i = begin; i < end; ++i) fn(i);
}

}  // namespace abusedet
