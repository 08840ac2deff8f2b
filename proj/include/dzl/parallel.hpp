#pragma once

#include <cstddef>
#include <functional>

namespace dzl {

/// Worker count from DZL_THREADS (default 1, clamped to [1, 256]).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
/// handled exactly once; callers write results into per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dzl
