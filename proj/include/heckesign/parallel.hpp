#ifndef HECKESIGN_PARALLEL_HPP
#define HECKESIGN_PARALLEL_HPP

#include <cstdint>
#include <functional>

#include "heckesign/summation.hpp"

namespace heckesign {

// Worker count: HECKESIGN_WORKERS env var if set, hardware concurrency
// otherwise, always at least 1.
int worker_count();

// Index ranges are split into fixed-size blocks (independent of the worker
// count) so every parallel result is bitwise identical to the serial one.
constexpr std::int64_t kScanBlock = 1 << 16;

inline std::int64_t block_count(std::int64_t lo, std::int64_t hi, std::int64_t block = kScanBlock) {
    if (hi < lo) return 0;
    return (hi - lo) / block + 1;
}

// Runs fn(block_index, block_lo, block_hi) over [lo, hi] split into fixed
// blocks. Blocks are claimed dynamically by workers; fn must write only to
// per-block slots. With workers <= 1 runs inline.
void parallel_blocks(std::int64_t lo, std::int64_t hi,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn,
                     int workers = -1, std::int64_t block = kScanBlock);

// Deterministic blocked reduction: per-block compensated sums merged in block
// order. Identical output for every worker count.
SumResult parallel_sum(std::int64_t lo, std::int64_t hi,
                       const std::function<double(std::int64_t)>& term,
                       int workers = -1);

}  // namespace heckesign

#endif
