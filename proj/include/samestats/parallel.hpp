#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace samestats {

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs body(worker, begin, end) over contiguous index blocks. Results are
// independent of the worker count as long as body writes only to its block.
template <typename Body>
void parallel_blocks(std::size_t count, unsigned workers, Body&& body) {
  workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    body(0U, std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
}

}  // namespace samestats
