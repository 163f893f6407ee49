#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace symtomo::cli {

// Runs fn(0..count-1) on a bounded pool. fn must handle its own exceptions;
// an escaping one terminates the process.
template <typename F>
void parallel_for(std::size_t count, unsigned workers, F&& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1u, hw);
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace symtomo::cli
