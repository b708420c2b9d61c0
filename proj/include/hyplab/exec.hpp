#pragma once

#include <cstddef>
#include <cstdint>

#include <omp.h>

namespace hyplab {

// Every parallel kernel in the library also has a serial path, selected at
// call time. The serial path is the reference used by the unit tests; the
// parallel path must produce bitwise-identical results, which the kernels
// guarantee by writing per-item slots and reducing in index order.
enum class Exec { serial, parallel };

template <class F>
void for_each_index(Exec exec, std::size_t n, F&& body) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
}

inline void set_worker_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

inline double wall_time() { return omp_get_wtime(); }

} // namespace hyplab
