#include "netsale/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace netsale {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NETSALE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void run_chunks(long long total, long long chunk, int threads,
                const std::function<void(long long, long long, long long)>& fn) {
    if (total <= 0) return;
    if (chunk < 1) chunk = 1;
    const long long n_chunks = (total + chunk - 1) / chunk;
    threads = std::min<long long>(resolve_threads(threads), n_chunks);

    if (threads <= 1) {
        for (long long c = 0; c < n_chunks; ++c)
            fn(c, c * chunk, std::min(total, (c + 1) * chunk));
        return;
    }

    std::atomic<long long> next{0};
    auto worker = [&] {
        for (;;) {
            long long c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fn(c, c * chunk, std::min(total, (c + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

} // namespace netsale
