#pragma once

#include <functional>

namespace tropint {

/// Worker cap for parallel loops. Defaults to the TROPINT_THREADS environment
/// variable, or 1 when unset.
int max_threads();
void set_max_threads(int n);

/// Runs fn(0..n-1), splitting across up to max_threads() workers. Callers
/// write results into index-addressed slots so merges stay deterministic.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace tropint
