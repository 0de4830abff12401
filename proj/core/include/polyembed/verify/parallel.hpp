#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace polyembed {

/// Worker count: hardware concurrency, at least 1, overridable through
/// POLYEMBED_THREADS.
unsigned worker_count();

/// Splits [0, n) into fixed chunks of `chunk` indices (independent of the
/// worker count), runs fn(begin, end) for each on a pool of threads and
/// returns the per-chunk results in chunk order, so reductions over them are
/// deterministic. The first exception (in chunk order) is rethrown after all
/// workers finish.
template <class Fn>
auto parallel_chunks(std::size_t n, Fn fn, std::size_t chunk = 2048)
{
    using Result = decltype(fn(std::size_t{0}, std::size_t{0}));
    const std::size_t count = (n + chunk - 1) / chunk;
    std::vector<Result> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t c = next++; c < count; c = next++) {
            try {
                results[c] = fn(c * chunk, std::min(n, (c + 1) * chunk));
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min<std::size_t>(worker_count(), std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace polyembed
