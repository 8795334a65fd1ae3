#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace extridge::detail {

// Deterministic parallel for: partitions [0, count) across hardware threads.
// Each index must write only its own output slot; results are then
// independent of the schedule.
inline void run_partitioned(int count, const std::function<void(int)>& body) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max(count, 1)));
    if (workers <= 1) {
        for (int k = 0; k < count; ++k) body(k);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int k = static_cast<int>(w); k < count;
                 k += static_cast<int>(workers)) {
                body(k);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace extridge::detail
