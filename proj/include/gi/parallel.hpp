#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace gi {

/// Runs fn(i) for i in [0, total) on up to `workers` threads. Work is handed
/// out in small chunks through a shared counter; fn must be safe to run
/// concurrently for distinct i.
template <typename Fn>
void parallel_for(size_t total, int workers, Fn&& fn, size_t chunk = 64) {
    if (total == 0) return;
    if (workers <= 1 || total <= chunk) {
        for (size_t i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t begin = next.fetch_add(chunk);
            if (begin >= total) return;
            size_t end = std::min(begin + chunk, total);
            for (size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> threads;
    int spawn = workers - 1;
    threads.reserve(spawn);
    for (int i = 0; i < spawn; ++i) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
}

}  // namespace gi
