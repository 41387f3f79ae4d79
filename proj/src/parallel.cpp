#include "heckesign/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace heckesign {

int worker_count() {
    if (const char* env = std::getenv("HECKESIGN_WORKERS")) {
        try {
            int w = std::stoi(env);
            if (w >= 1) return w;
        } catch (...) {
        }
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_blocks(std::int64_t lo, std::int64_t hi,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn,
                     int workers, std::int64_t block) {
    if (hi < lo) return;
    if (workers < 0) workers = worker_count();
    const std::int64_t nblocks = block_count(lo, hi, block);
    auto run_block = [&](std::int64_t b) {
        std::int64_t blo = lo + b * block;
        std::int64_t bhi = std::min(hi, blo + block - 1);
        fn(b, blo, bhi);
    };
    if (workers <= 1 || nblocks <= 1) {
        for (std::int64_t b = 0; b < nblocks; ++b) run_block(b);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto drain = [&]() {
        for (;;) {
            std::int64_t b = next.fetch_add(1);
            if (b >= nblocks) break;
            run_block(b);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<std::int64_t>(workers, nblocks)) - 1;
    pool.reserve(spawn);
    for (int i = 0; i < spawn; ++i) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
}

SumResult parallel_sum(std::int64_t lo, std::int64_t hi,
                       const std::function<double(std::int64_t)>& term, int workers) {
    if (hi < lo) return {};
    std::vector<CompensatedSum> partial(block_count(lo, hi));
    parallel_blocks(
        lo, hi,
        [&](std::int64_t b, std::int64_t blo, std::int64_t bhi) {
            CompensatedSum acc;
            for (std::int64_t n = blo; n <= bhi; ++n) acc.add(term(n));
            partial[b] = acc;
        },
        workers);
    CompensatedSum total;
    for (const auto& p : partial) total.merge(p);
    return finish(total);
}

}  // namespace heckesign
