#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace mvhr {

namespace detail {
inline std::atomic<unsigned>& worker_setting() {
  static std::atomic<unsigned> w{0};
  return w;
}
}  // namespace detail

/// Worker count used when a call does not pass one explicitly. Falls back to the
/// MVHR_WORKERS environment variable, then to 1.
inline unsigned default_workers() {
  unsigned w = detail::worker_setting().load();
  if (w != 0) return w;
  if (const char* env = std::getenv("MVHR_WORKERS")) {
    std::string s(env);
    if (s == "auto") return std::max(1u, std::thread::hardware_concurrency());
    try {
      long v = std::stol(s);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

inline void set_default_workers(unsigned w) { detail::worker_setting().store(w); }

/// Runs task(w) for w in [0, workers) and joins. With one worker the task runs inline.
template <class Task>
void run_workers(unsigned workers, Task&& task) {
  if (workers <= 1) {
    task(0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&task, &errors, w] {
      try {
        task(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace mvhr
