#pragma once
#include <functional>

#include "omegalab/common.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

// Sieves [first, last] in consecutive blocks of `block_size` and hands each
// block to `consume` in ascending order. Workers sieve blocks in parallel;
// consumption happens on the calling thread, strictly ordered, so results are
// identical for every thread count.
void run_blocks(const PrimeTable& primes, u64 first, u64 last, u64 block_size, unsigned threads,
                const std::function<void(const FactorCountBlock&)>& consume);

}  // namespace omegalab
