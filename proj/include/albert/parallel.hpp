#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace albert {

// Number of workers used for embarrassingly parallel sweeps. Overridable so
// runs are tunable; results never depend on the worker count.
std::size_t worker_count();
void set_worker_count(std::size_t n); // 0 restores the hardware default

// Partitions [0, count) into contiguous chunks, one worker per chunk, and
// merges in chunk order. fn(begin, end, chunk_index) must only write to its
// own chunk's state.
void parallel_chunks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace albert
