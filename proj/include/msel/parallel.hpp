#pragma once

#include <cstddef>
#include <functional>

namespace msel {

/// Worker count honoring MSEL_THREADS (unset or 0 means hardware
/// concurrency).
std::size_t thread_budget();

/// Calls fn(worker, begin, end) over contiguous chunks of [0, n). Chunk
/// boundaries depend only on n and the worker count.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                     std::size_t workers = thread_budget());

}  // namespace msel
