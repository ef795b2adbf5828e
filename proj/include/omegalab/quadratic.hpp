#pragma once
#include <optional>
#include <string>
#include <vector>

#include "omegalab/common.hpp"
#include "omegalab/report.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

enum class SplitType { split, inert, ramified };

struct QuadraticFieldSpec {
    int discriminant = -4;  // fundamental, < 0; supported: -4, -8
    std::string label;

    static QuadraticFieldSpec make(int D);
};

SplitType splitting_type(u64 p, int D);

// g(n) = sum over ideals A of norm n of (-1)^{Omega(A)}; multiplicative with
// local factors
//   split p:    g(p^k) = (-1)^k (k+1)
//   inert p:    g(p^k) = (-1)^{k/2} for even k, 0 for odd k
//   ramified p: g(p^k) = (-1)^k
struct IdealParityBlock {
    u64 lo = 0;
    u64 hi = 0;
    std::vector<i64> g;
};

class GSiever {
public:
    GSiever(int D, const PrimeTable& primes);
    void sieve(u64 lo, u64 hi, IdealParityBlock& out);

private:
    int d_;
    const PrimeTable& primes_;
    std::vector<i8> chi_;  // kronecker table mod |D|
    std::vector<u32> prod_;
};

IdealParityBlock g_sieve(u64 lo, u64 hi, int D, const PrimeTable& primes);

// Direct Gaussian-integer enumeration (D = -4 only, test oracle). Returns
// g[n] for n = 1..limit at index n-1.
std::vector<i64> gaussian_oracle(u64 limit);

// Number of ideals of norm n, from the local splitting data.
u64 ideal_count(u64 n, int D);

struct SKResult {
    ThresholdReport report;
    std::vector<SampleRow> samples;
    i64 final_value = 0;
    std::optional<i64> boundary_value;          // S_K(threshold-1)
    std::optional<u64> last_violation_below;    // largest x < threshold with S_K(x) <= 0
};

// S_K(x) = sum_{n<=x} (-1)^n g(n), positivity gated on [threshold, limit]
// (threshold 9 for D=-4, 132 for D=-8).
SKResult run_S_K(u64 limit, int D, const std::vector<u64>& sample_points, unsigned threads = 1,
                 u64 block_size = 1ull << 22);

}  // namespace omegalab
