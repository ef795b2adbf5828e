#pragma once
#include <vector>

#include "omegalab/common.hpp"

namespace omegalab {

struct PrimeTable {
    u64 limit = 0;
    std::vector<u32> primes;  // ascending, all primes <= limit
};

// limit >= 2 required.
PrimeTable build_prime_table(u64 limit);

// Exact (omega, Omega, mu) for every n in [lo, hi).
struct FactorCountBlock {
    u64 lo = 0;
    u64 hi = 0;  // exclusive
    std::vector<u8> omega;
    std::vector<u8> big_omega;
    std::vector<i8> mobius;

    std::size_t size() const { return static_cast<std::size_t>(hi - lo); }
};

// Reusable block siever; `prod` scratch persists between blocks so long scans
// do not churn the allocator. One siever per worker thread.
class BlockSiever {
public:
    explicit BlockSiever(const PrimeTable& primes) : primes_(primes) {}

    // Requires 1 <= lo < hi, hi-1 < 2^32 and primes.limit >= floor(sqrt(hi-1)).
    void sieve(u64 lo, u64 hi, FactorCountBlock& out);

private:
    const PrimeTable& primes_;
    std::vector<u32> prod_;
};

FactorCountBlock sieve_block(u64 lo, u64 hi, const PrimeTable& primes);

// Naive trial division; test oracle only.
void factor_counts_oracle(u64 n, int& omega, int& big_omega, int& mobius);

}  // namespace omegalab
