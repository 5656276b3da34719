#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sigman {

/// Worker count for internal parallel loops: SIGMAN_THREADS when set to a
/// positive integer, otherwise the hardware concurrency.
std::size_t worker_threads();

/// Runs body(i) for i in [0, count) on up to worker_threads() threads. The
/// body must write only to slots owned by i, so results do not depend on
/// scheduling. An exception thrown by any body is rethrown on the calling
/// thread after all workers finish (lowest worker index wins).
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::min(worker_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sigman
