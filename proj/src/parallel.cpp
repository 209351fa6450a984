#include "streambench/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>

namespace streambench {

namespace {
std::atomic<int> g_workers{0};
}

int max_workers() { return omp_get_max_threads(); }

int worker_count() {
  const int w = g_workers.load(std::memory_order_relaxed);
  return w > 0 ? w : max_workers();
}

void set_worker_count(int workers) { g_workers.store(workers > 0 ? workers : 0, std::memory_order_relaxed); }

int env_worker_count() {
  const char* env = std::getenv("STREAMBENCH_THREADS");
  if (env == nullptr) return 0;
  int value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end || value < 1) return 0;
  return value;
}

int omp_team_size() { return omp_get_num_threads(); }
int omp_thread_id() { return omp_get_thread_num(); }

}  // namespace streambench
