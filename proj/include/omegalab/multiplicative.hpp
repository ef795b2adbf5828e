#pragma once
#include <vector>

#include "omegalab/common.hpp"
#include "omegalab/report.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

struct FactorCounts {
    int omega = 0;
    int big_omega = 0;
    int mobius = 1;
};

// Root-of-unity base shared by mu_m / nu_m / nu*_m. Powers of z are read
// from a table indexed mod m (exponent <= kMaxExponent always: Omega(n) <= 40
// for n <= 10^12), never from repeated multiplication.
struct RootOfUnityParams {
    static constexpr int kMaxExponent = 64;

    int m = 1;
    cplx unit;                   // e^{2*pi*i/m}
    cplx z;                      // -unit
    std::vector<cplx> z_pow;     // z^k, k = 0..kMaxExponent

    static RootOfUnityParams make(int m);

    cplx z_power(int k) const { return z_pow[static_cast<std::size_t>(k)]; }
};

cplx mu_m(u64 n, const RootOfUnityParams& params, const FactorCounts& counts);
cplx nu_m(u64 n, const RootOfUnityParams& params, const FactorCounts& counts);
cplx nu_star_m(u64 n, const RootOfUnityParams& params, const FactorCounts& counts);
cplx mu_star_m(u64 n, const RootOfUnityParams& params, const FactorCounts& counts);

// h(n) = sum_{d|n} f(d) g(n/d); inputs indexed 1..N as v[n-1].
std::vector<cplx> dirichlet_convolve(const std::vector<cplx>& f, const std::vector<cplx>& g);

// w^k with w^0 = 1 for every w including 0.
std::vector<cplx> power_table(cplx w, int max_exp);

// Per-n symbol arrays over [1, n_max], built from one sieve pass.
struct SymbolArrays {
    std::vector<u8> omega;
    std::vector<u8> big_omega;
    std::vector<i8> mobius;

    static SymbolArrays build(u64 n_max);
    FactorCounts at(u64 n) const {
        return {omega[n - 1], big_omega[n - 1], mobius[n - 1]};
    }
};

// sum_{d|n} mu_m(d) = (1 - e^{2*pi*i/m})^{omega(n)} for all n <= n_max
ThresholdReport check_eq_3_2(const RootOfUnityParams& params, u64 n_max, double tol = 1e-9);

// (nu_m * h)(n) = 1 with h(n) = (1 + e^{2*pi*i/m})^{Omega(n)}, n <= n_max
ThresholdReport check_eq_1_6(const RootOfUnityParams& params, u64 n_max, double tol = 1e-9);

// sum_{n<=x} mu_m(n) floor(x/n) = sum_{n<=x} (1 - e^{2*pi*i/m})^{omega(n)},
// checked at every x in xs
ThresholdReport check_lemma_3_1(const RootOfUnityParams& params, const std::vector<u64>& xs,
                                double tol = 1e-9);

// sum_{d<=x} lambda(d) floor(x/d) for one x, exact integers
i64 liouville_floor_sum(u64 x, const SymbolArrays& sym);

// exact equality with floor(sqrt(x)) for all x <= x_max
ThresholdReport check_remark_3_1(u64 x_max);

// max_n |(mu*_m conv nu*_m)(n) - eps(n)| over n <= n_max
double dirichlet_inverse_residual(const RootOfUnityParams& params, u64 n_max);

}  // namespace omegalab
