#ifndef SWGATE_SWEEP_HPP
#define SWGATE_SWEEP_HPP

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace swgate {

// Worker-pool width used by parallel_map when jobs == 0 (set from the CLI --jobs flag).
void set_max_jobs(int jobs);
int max_jobs();

// OpenMP map over [0, n): results assembled in index order, so output is
// deterministic for any thread count. fn must be pure per point.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn, int jobs = 0) {
    std::vector<T> out(n);
    if (jobs <= 0) jobs = max_jobs();
    std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            out[std::size_t(i)] = fn(std::size_t(i));
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (!error) error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

// Reference single-threaded map, kept for testing and benchmarking against parallel_map.
template <typename T, typename Fn>
std::vector<T> serial_map(std::size_t n, Fn&& fn) {
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
    return out;
}

}  // namespace swgate

#endif
