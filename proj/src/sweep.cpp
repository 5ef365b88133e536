#include "swgate/sweep.hpp"

#include <atomic>
#include <thread>

namespace swgate {

namespace {
std::atomic<int> g_max_jobs{0};
}

void set_max_jobs(int jobs) { g_max_jobs.store(jobs > 0 ? jobs : 0); }

int max_jobs() {
    const int j = g_max_jobs.load();
    if (j > 0) return j;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return int(std::thread::hardware_concurrency());
#endif
}

}  // namespace swgate
