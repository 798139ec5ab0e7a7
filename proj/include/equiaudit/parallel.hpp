#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace equiaudit {

/// Number of worker threads to use: hardware concurrency, optionally capped
/// by the EQUIAUDIT_THREADS environment variable.
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* cap = std::getenv("EQUIAUDIT_THREADS")) {
    long v = std::strtol(cap, nullptr, 10);
    if (v >= 1 && static_cast<unsigned>(v) < n) n = static_cast<unsigned>(v);
  }
  return n;
}

/// Runs fn(i) for i in [0, n). Work items must be independent; callers are
/// expected to write into pre-sized per-index slots and do any reduction
/// afterwards in index order, which keeps results identical at any thread
/// count. The first exception thrown by a worker is rethrown here.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  const unsigned workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  const unsigned used = std::min<unsigned>(workers, static_cast<unsigned>(n));
  std::vector<std::exception_ptr> errors(used);
  for (unsigned t = 0; t < used; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = static_cast<int>(t); i < n; i += static_cast<int>(used)) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace equiaudit
