#pragma once

#include <cstddef>
#include <functional>

namespace closedgeo {

// Runs body(i) for i in [0, n) on up to `threads` worker threads (0 picks
// the hardware concurrency). Each index is independent; the exception from
// the lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace closedgeo
