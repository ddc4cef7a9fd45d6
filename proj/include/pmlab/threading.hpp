#pragma once

#include <cstddef>
#include <functional>

namespace pmlab {

// Worker-count cap for internal fan-out. 0 selects the hardware default.
// Set once at startup; all parallel results are merged in block order, so
// values do not depend on the thread count or the schedule.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs job(0..count-1), possibly across threads. Blocks are dispatched from
// an atomic counter; callers own any per-block output slots and merge them
// sequentially afterwards.
void parallel_blocks(std::size_t count, const std::function<void(std::size_t)>& job);

} // namespace pmlab
