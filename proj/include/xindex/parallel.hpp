#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace xindex {

/// 0 means "one per hardware thread".
inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end) over contiguous, statically assigned chunks of [0, n).
/// The body must only write to slots it owns; results are then independent of `workers`.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  workers = resolve_workers(workers);
  if (workers == 1 || n < 2) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, n);
  const std::size_t step = (n + chunks - 1) / chunks;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(chunks);
  threads.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * step;
    const std::size_t end = std::min(n, begin + step);
    if (begin >= end) break;
    threads.emplace_back([&, c, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace xindex
