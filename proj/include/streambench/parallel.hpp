#pragma once

#include <cstdint>

namespace streambench {

/// Number of worker threads used by the data-parallel kernels.
int worker_count();

/// Sets the worker count; values < 1 reset to the OpenMP default.
void set_worker_count(int workers);

/// Hardware/default worker count (OpenMP max threads).
int max_workers();

/// Worker count from the STREAMBENCH_THREADS environment variable, if set and valid.
int env_worker_count();

// Thin wrappers so this header does not pull in <omp.h>.
int omp_team_size();
int omp_thread_id();

/// Runs body(i) for i in [begin, end) with a static schedule over worker_count() threads.
template <class Body>
void parallel_for(std::int64_t begin, std::int64_t end, Body&& body) {
  const int workers = worker_count();
#pragma omp parallel for num_threads(workers) schedule(static)
  for (std::int64_t i = begin; i < end; ++i) body(i);
}

/// Applies body(lo, hi) to contiguous chunks covering [0, n), one per worker.
/// Chunks may be empty; body is only called for non-empty ones.
template <class Body>
void parallel_chunks(std::int64_t n, Body&& body) {
  // Always fork a team, even of one thread: the fork/join is the kernel launch.
  const int workers = worker_count();
#pragma omp parallel num_threads(workers)
  {
    const std::int64_t nthreads = omp_team_size();
    const std::int64_t tid = omp_thread_id();
    const std::int64_t lo = n * tid / nthreads;
    const std::int64_t hi = n * (tid + 1) / nthreads;
    if (lo < hi) body(lo, hi);
  }
}

}  // namespace streambench
