#pragma once

// Index-parallel loop. Each task writes into its own slot, so results come
// out in index order whatever the thread count.

#include <cstddef>
#include <functional>

namespace koszul {

/// 0 means "use the hardware concurrency".
void set_default_threads(std::size_t n);
std::size_t default_threads();

/// Runs fn(i) for i in [0, n). If several tasks throw, the exception of the
/// smallest index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t threads = 0);

}  // namespace koszul
