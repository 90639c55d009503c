#include "ttvsr/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ttvsr {

int worker_count() {
    static const int cached = [] {
        if (const char* env = std::getenv("TTVSR_THREADS")) {
            const int n = std::atoi(env);
            if (n > 0) return n;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return cached;
}

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::min(worker_count(), n);
    if (workers <= 1 || n == 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<int> next(begin);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= end) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace ttvsr
