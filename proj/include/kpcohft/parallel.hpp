#ifndef KPCOHFT_PARALLEL_HPP
#define KPCOHFT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace kpcohft {

/// Worker count, bounded by the KPCOHFT_THREADS environment variable.
inline int thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char *env = std::getenv("KPCOHFT_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return std::min(v, hw * 4);
    }
    return hw;
}

/// Runs f(i) for i in [0,n) across worker threads. f must be safe to call
/// concurrently for distinct i.
template <typename F>
void parallel_for(int n, F f) {
    int nt = std::min(thread_count(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> threads;
    std::atomic<int> next{0};
    for (int t = 0; t < nt; ++t)
        threads.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) break;
                f(i);
            }
        });
    for (auto &th : threads) th.join();
}

} // namespace kpcohft

#endif
