#include "omegalab/sieve.hpp"

namespace omegalab {

PrimeTable build_prime_table(u64 limit) {
    if (limit < 2) throw std::invalid_argument("build_prime_table: limit must be >= 2");
    std::vector<u8> composite(limit + 1, 0);
    for (u64 i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
    PrimeTable t;
    t.limit = limit;
    for (u64 i = 2; i <= limit; ++i)
        if (!composite[i]) t.primes.push_back(static_cast<u32>(i));
    return t;
}

void BlockSiever::sieve(u64 lo, u64 hi, FactorCountBlock& out) {
    if (lo < 1 || lo >= hi) throw std::invalid_argument("sieve_block: need 1 <= lo < hi");
    if (hi - 1 > 0xFFFFFFFFull)
        throw std::invalid_argument("sieve_block: values beyond 2^32 not supported");
    u64 root = isqrt_u64(hi - 1);
    if (primes_.limit < root)
        throw std::logic_error("sieve_block: prime table smaller than sqrt(hi-1)");

    std::size_t len = static_cast<std::size_t>(hi - lo);
    out.lo = lo;
    out.hi = hi;
    out.omega.assign(len, 0);
    out.big_omega.assign(len, 0);
    out.mobius.assign(len, 1);
    prod_.assign(len, 1);

    u8*  om = out.omega.data();
    u8*  bo = out.big_omega.data();
    i8*  mu = out.mobius.data();
    u32* pr = prod_.data();

    for (u32 p : primes_.primes) {
        if (static_cast<u64>(p) > root) break;
        u64 first = ((lo + p - 1) / p) * p;
        for (u64 n = first; n < hi; n += p) {
            std::size_t i = static_cast<std::size_t>(n - lo);
            ++om[i];
            ++bo[i];
            mu[i] = static_cast<i8>(-mu[i]);
            pr[i] *= p;
        }
        // prime powers: one extra Omega per power, square kills mu
        u64 q = static_cast<u64>(p) * p;
        while (q < hi) {
            u64 fq = ((lo + q - 1) / q) * q;
            for (u64 n = fq; n < hi; n += q) {
                std::size_t i = static_cast<std::size_t>(n - lo);
                ++bo[i];
                mu[i] = 0;
                pr[i] *= p;
            }
            if (q > (hi - 1) / p) break;
            q *= p;
        }
    }

    // remaining cofactor > sqrt(hi-1) is a single prime
    for (std::size_t i = 0; i < len; ++i) {
        if (pr[i] != static_cast<u32>(lo + i)) {
            ++om[i];
            ++bo[i];
            mu[i] = static_cast<i8>(-mu[i]);
        }
    }
}

FactorCountBlock sieve_block(u64 lo, u64 hi, const PrimeTable& primes) {
    BlockSiever s(primes);
    FactorCountBlock b;
    s.sieve(lo, hi, b);
    return b;
}

void factor_counts_oracle(u64 n, int& omega, int& big_omega, int& mobius) {
    if (n < 1) throw std::invalid_argument("factor_counts_oracle: n >= 1");
    omega = 0;
    big_omega = 0;
    bool squarefree = true;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            ++omega;
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            big_omega += e;
            if (e > 1) squarefree = false;
        }
    }
    if (n > 1) {
        ++omega;
        ++big_omega;
    }
    mobius = squarefree ? ((omega & 1) ? -1 : 1) : 0;
}

}  // namespace omegalab
