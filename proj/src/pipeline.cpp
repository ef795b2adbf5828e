#include "omegalab/pipeline.hpp"

#include <atomic>
#include <condition_variable>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace omegalab {

void run_blocks(const PrimeTable& primes, u64 first, u64 last, u64 block_size, unsigned threads,
                const std::function<void(const FactorCountBlock&)>& consume) {
    if (first > last) return;
    if (block_size == 0) throw std::invalid_argument("run_blocks: block_size must be positive");
    if (threads == 0) threads = 1;

    const u64 n_blocks = (last - first) / block_size + 1;
    auto block_range = [&](u64 k, u64& lo, u64& hi) {
        lo = first + k * block_size;
        hi = std::min(last + 1, lo + block_size);
    };

    if (threads == 1 || n_blocks == 1) {
        BlockSiever siever(primes);
        FactorCountBlock block;
        for (u64 k = 0; k < n_blocks; ++k) {
            u64 lo, hi;
            block_range(k, lo, hi);
            siever.sieve(lo, hi, block);
            consume(block);
        }
        return;
    }

    std::mutex mu;
    std::condition_variable cv_ready, cv_space;
    std::map<u64, FactorCountBlock> ready;
    std::atomic<u64> next_index{0};
    u64 needed = 0;  // guarded by mu
    const std::size_t max_inflight = 2 * threads;
    std::exception_ptr worker_error;
    bool stop = false;

    auto worker = [&]() {
        BlockSiever siever(primes);
        try {
            for (;;) {
                u64 k = next_index.fetch_add(1);
                if (k >= n_blocks) return;
                u64 lo, hi;
                block_range(k, lo, hi);
                FactorCountBlock block;
                siever.sieve(lo, hi, block);
                std::unique_lock<std::mutex> lk(mu);
                cv_space.wait(lk, [&] {
                    return stop || ready.size() < max_inflight || k == needed;
                });
                if (stop) return;
                ready.emplace(k, std::move(block));
                cv_ready.notify_all();
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!worker_error) worker_error = std::current_exception();
            stop = true;
            cv_ready.notify_all();
            cv_space.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);

    try {
        for (u64 k = 0; k < n_blocks; ++k) {
            FactorCountBlock block;
            {
                std::unique_lock<std::mutex> lk(mu);
                needed = k;
                cv_space.notify_all();
                cv_ready.wait(lk, [&] { return stop || ready.count(k) > 0; });
                if (stop) break;
                auto it = ready.find(k);
                block = std::move(it->second);
                ready.erase(it);
                cv_space.notify_all();
            }
            consume(block);
        }
    } catch (...) {
        {
            std::lock_guard<std::mutex> lk(mu);
            stop = true;
            cv_ready.notify_all();
            cv_space.notify_all();
        }
        for (auto& t : pool) t.join();
        throw;
    }

    {
        std::lock_guard<std::mutex> lk(mu);
        stop = true;
        cv_ready.notify_all();
        cv_space.notify_all();
    }
    for (auto& t : pool) t.join();
    if (worker_error) std::rethrow_exception(worker_error);
}

}  // namespace omegalab
