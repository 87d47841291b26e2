#include "cheese/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace cheese {

int worker_count() {
    if (const char* env = std::getenv("SWISSCHEESE_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return std::min(v, 256);
    }
    unsigned hc = std::thread::hardware_concurrency();
    if (hc == 0) return 1;
    return std::min<int>(static_cast<int>(hc), 256);
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), chunks);

    auto run_chunk = [&](std::size_t c) {
        fn(c, c * kChunk, std::min(n, (c + 1) * kChunk));
    };

    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;

    auto worker = [&] {
        std::size_t c;
        while (!failed.load(std::memory_order_relaxed) &&
               (c = next.fetch_add(1)) < chunks) {
            try {
                run_chunk(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

double parallel_max(std::size_t n, const std::function<double(std::size_t)>& f) {
    if (n == 0) return -std::numeric_limits<double>::infinity();
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> best(chunks, -std::numeric_limits<double>::infinity());
    parallel_chunks(n, [&](std::size_t c, std::size_t b, std::size_t e) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = b; i < e; ++i) m = std::max(m, f(i));
        best[c] = m;
    });
    double m = -std::numeric_limits<double>::infinity();
    for (double v : best) m = std::max(m, v); // fixed order: chunk index
    return m;
}

} // namespace cheese
