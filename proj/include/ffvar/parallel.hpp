#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ffvar {

/// Worker count from FFVAR_THREADS (unset or 0 means hardware concurrency).
unsigned thread_count();

/// Calls body(chunk, begin, end) for `chunks` contiguous slices of [0, n).
/// Slices are fixed by (n, chunks) alone, so callers that write per-chunk
/// results and merge them in chunk order get thread-count-independent output.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t chunks, Body&& body) {
  chunks = std::max<std::size_t>(1, std::min(chunks, n));
  auto bounds = [&](std::size_t c) { return n * c / chunks; };
  const unsigned workers = std::min<std::size_t>(thread_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c, bounds(c), bounds(c + 1));
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers) body(c, bounds(c), bounds(c + 1));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ffvar
