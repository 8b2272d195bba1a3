#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace orlicz {

/// Worker count from ORLICZ_CONC_THREADS, else the hardware concurrency.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("ORLICZ_CONC_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1)
                return static_cast<unsigned>(std::min(v, 256L));
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(begin, end) for consecutive chunks of [0, n). Chunk boundaries depend
/// only on n and chunk, never on the worker count.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t chunk, Fn&& fn, unsigned workers = worker_count())
{
    if (n == 0)
        return;
    chunk = std::max<std::size_t>(chunk, 1);
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, nchunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c)
            fn(c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < nchunks; c = next++) {
                try {
                    fn(c * chunk, std::min(n, (c + 1) * chunk));
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!err)
                        err = std::current_exception();
                    next = nchunks;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace orlicz
