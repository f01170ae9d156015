#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ifslab {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("IFSLAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// static block partition; workers write only to disjoint index ranges, so
// results are identical for any thread count
template <class Fn>
void parallel_for(long n, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    if (static_cast<long>(threads) > n) threads = static_cast<int>(n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (int t = 0; t < threads; ++t) {
        long lo = n * t / threads;
        long hi = n * (t + 1) / threads;
        pool.emplace_back([&, lo, hi]() {
            try {
                for (long i = lo; i < hi; ++i) {
                    if (failed.load(std::memory_order_relaxed)) return;
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mutex);
                if (!failed.exchange(true)) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ifslab
