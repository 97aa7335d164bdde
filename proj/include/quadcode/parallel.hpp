#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace quadcode {

/// Splits [0, total) into `threads` contiguous shards, runs fn(begin, end) on
/// each (in parallel when threads > 1) and returns the results in shard order.
/// Callers merge with an associative operation, so the outcome never depends
/// on the thread count.
template <typename Result, typename Fn>
std::vector<Result> run_shards(std::uint64_t total, unsigned threads, Fn fn) {
    threads = std::max(1u, threads);
    if (total < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(1, total));
    std::vector<Result> results(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto bounds = [&](unsigned s) { return total / threads * s + std::min<std::uint64_t>(s, total % threads); };
    auto work = [&](unsigned s) {
        try {
            results[s] = fn(bounds(s), bounds(s + 1));
        } catch (...) {
            errors[s] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned s = 0; s < threads; ++s) pool.emplace_back(work, s);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace quadcode
