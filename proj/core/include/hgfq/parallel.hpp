#pragma once

#include <cstddef>
#include <functional>

namespace hgfq {

// Worker count: HGFQ_WORKERS if set, else 1.
unsigned worker_count();
void set_worker_count(unsigned n);

// Runs fn(i) for i in [0, n) on the worker pool; results must be written to
// per-index slots so that the outcome is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hgfq
