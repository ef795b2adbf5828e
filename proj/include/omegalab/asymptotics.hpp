#pragma once
#include <string>
#include <vector>

#include "omegalab/common.hpp"

namespace omegalab {

// (log x)^z = exp(z * ln ln x), principal real logarithms.
// x >= e for arbitrary z; 1 < x < e only for real-integer z.
cplx complex_log_power(double x, cplx z);

struct SeriesSample {
    u64 x = 0;
    cplx value{0.0, 0.0};
};

struct AsymptoticComparison {
    int m = 0;
    std::string series_id;
    std::vector<SeriesSample> samples;
    cplx predicted_constant{0.0, 0.0};
    std::vector<std::pair<u64, double>> remainders;          // (x, R(x))
    std::vector<std::pair<u64, double>> remainder_times_logx;
    double max_over_median = 0.0;
    bool verdict = false;
};

// R(x) = |empirical(x) * (log x)^{e^{2 pi i/m}} - constant|; verdict true iff
// max over samples of R(x) log x is within `slack` times its median.
AsymptoticComparison compare_limit(const std::vector<SeriesSample>& samples, int m,
                                   const std::string& series_id, cplx constant,
                                   double slack = 3.0);

// Additive-constant estimate: mean over the top decade of samples of
// empirical(x) - scale_constant * (log x)^z. Requires Re(z) < 1 and a span
// of at least three decades.
cplx estimate_constant(const std::vector<SeriesSample>& samples, cplx z, cplx scale_constant);

// Decades from 1e3 up to limit plus three geometric midpoints per decade.
std::vector<u64> asymptotic_sample_grid(u64 limit);

}  // namespace omegalab
