#pragma once

#include <cstddef>
#include <functional>

namespace rdlab {

/// Worker count: RDLAB_THREADS if set and positive, otherwise all cores.
unsigned thread_count();

/// Runs fn(i) for i in [begin, end) split into contiguous chunks.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn);

}  // namespace rdlab
