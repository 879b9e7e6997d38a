#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rwg::detail {

// Splits [0, count) into contiguous chunks, one per thread, and runs
// fn(chunk_index, begin, end). Chunk boundaries depend only on count and
// threads, so callers that reduce per-chunk results in chunk order are
// deterministic for a fixed thread count.
template <class Fn>
void parallel_chunks(unsigned threads, std::size_t count, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2 * threads) {
    fn(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(count, t * chunk);
      const std::size_t end = std::min(count, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          fn(static_cast<std::size_t>(t), begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::size_t chunk_count(unsigned threads, std::size_t count) {
  threads = std::max(1u, threads);
  return (threads == 1 || count < 2 * threads) ? 1 : threads;
}

}  // namespace rwg::detail
