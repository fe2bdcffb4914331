#pragma once

#include <cstddef>
#include <functional>

namespace stochmatch {

// 0 selects std::thread::hardware_concurrency().
unsigned resolve_workers(unsigned requested);

// Calls fn(chunk, worker) for every chunk in [0, chunks). Chunks are handed
// out dynamically; `worker` < resolve_workers(workers) indexes per-thread
// scratch. Callers store per-chunk results and reduce them in chunk order,
// which keeps every result independent of the worker count. The first
// exception thrown by any call is rethrown after all threads join.
void parallel_chunks(std::size_t chunks, unsigned workers,
                     const std::function<void(std::size_t, unsigned)>& fn);

}  // namespace stochmatch
