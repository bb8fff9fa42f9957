#pragma once

#include <cstddef>
#include <functional>

namespace magweyl {

// Global worker count for parallel loops and sweep execution. Defaults to 1;
// the CLI sets it from --threads or MAGWEYL_THREADS. Outputs of parallel
// loops must be disjoint per index so results do not depend on the count.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [begin, end), splitting across the worker count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

}  // namespace magweyl
