#pragma once
#include <string>
#include <vector>

#include "omegalab/common.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

enum class EulerKind { F, G, H, ScriptF, ScriptG, ScriptH };

EulerKind euler_kind_from_string(const std::string& s);
std::string euler_kind_name(EulerKind k);

struct EulerProductSpec {
    EulerKind kind = EulerKind::ScriptG;
    cplx z{0.0, 0.0};
    u64 prime_limit = 10'000'000;
    int tail_order = 2;
};

struct EulerConstantResult {
    cplx value{0.0, 0.0};
    u64 prime_limit = 0;
    double tail_estimate = 0.0;
    bool zero_factor = false;
};

// 1/Gamma(w), entire; exact zero at nonpositive integers.
cplx reciprocal_gamma(cplx w);
// 1/Gamma(1+z), relative accuracy ~1e-12 on |z| <= 4.
cplx gamma_reciprocal(cplx z);

// Riemann zeta by Euler-Maclaurin; needs Re(s) > 1 here.
cplx zeta_complex(cplx s);
// P(s) = sum_p p^{-s} via sum_j mu(j)/j log zeta(js); needs Re(s) >= 1.1.
cplx prime_zeta(cplx s);

// Selberg-Delange leading constants with prime-zeta tail correction.
EulerConstantResult euler_constant(const EulerProductSpec& spec, const PrimeTable& primes);

// Running |prod_{p<=x} (1 + e^{2 pi i/m}/p)| at log-spaced x (last x = prime_limit).
std::vector<std::pair<u64, double>> abs_partial_product(int m, u64 prime_limit,
                                                        const PrimeTable& primes);

struct TruncatedValue {
    cplx value{0.0, 0.0};
    double tail_estimate = 0.0;
};

// prod_p (1 - e^{2 pi i/m}/(p^s - 1)) and prod_p (1 + e^{2 pi i/m}/p^s)^{-1},
// truncated at prime_limit; Re(s) > 1 required.
TruncatedValue zeta_m(cplx s, int m, u64 prime_limit, const PrimeTable& primes);
TruncatedValue zeta_star_m(cplx s, int m, u64 prime_limit, const PrimeTable& primes);

// Prime sums from the logarithmic-derivative identities:
// v*(s) = sum_p log p sum_{k>=2} (z - z^k)/p^{ks}  (geometric parts closed-form),
// v(s)  = (z^2 - z) sum_p log p / ((p^s-1)(p^s-1+z)),  z = -e^{2 pi i/m}.
TruncatedValue v_star(cplx s, int m, u64 prime_limit, const PrimeTable& primes);
TruncatedValue v_func(cplx s, int m, u64 prime_limit, const PrimeTable& primes);

}  // namespace omegalab
