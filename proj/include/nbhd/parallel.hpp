#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace nbhd {

/// Worker-count resolution, strongest source first: an explicit request (the
/// --jobs flag), the NBHD_DUALITY_JOBS environment variable, then the
/// hardware concurrency, with a floor of one worker.
inline int resolve_jobs(std::optional<int> requested = std::nullopt) {
  int jobs = 0;
  if (requested.has_value()) {
    jobs = *requested;
  } else if (const char* env = std::getenv("NBHD_DUALITY_JOBS")) {
    jobs = std::atoi(env);
  } else {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
  }
  if (jobs < 1) jobs = 1;
  if (jobs > 256) jobs = 256;
  return jobs;
}

/// Runs body(i) for every i in [begin, end), striped across at most `jobs`
/// threads.  With one job (or a tiny range) the loop runs inline.  The body
/// must be safe to call concurrently; the first exception thrown by any
/// worker is rethrown on the calling thread after all workers join.
template <typename F>
void parallel_for(std::uint64_t begin, std::uint64_t end, int jobs, F&& body) {
  if (end <= begin) return;
  const std::uint64_t n = end - begin;
  std::uint64_t workers = jobs < 1 ? 1 : static_cast<std::uint64_t>(jobs);
  if (workers > n) workers = n;
  if (workers <= 1) {
    for (std::uint64_t i = begin; i < end; ++i) body(i);
    return;
  }

  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = begin + w; i < end && !failed.load(); i += workers)
          body(i);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace nbhd
