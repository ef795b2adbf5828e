#include "omegalab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace omegalab {

cplx complex_log_power(double x, cplx z) {
    if (!(x > 1.0)) throw std::domain_error("complex_log_power: need x > 1");
    bool integer_real = z.imag() == 0.0 && z.real() == std::nearbyint(z.real());
    if (x < M_E && !integer_real)
        throw std::domain_error("complex_log_power: x < e requires integer exponent");
    double loglog = std::log(std::log(x));
    return std::exp(z * loglog);
}

static double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n == 0) return 0.0;
    if (n & 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

AsymptoticComparison compare_limit(const std::vector<SeriesSample>& samples, int m,
                                   const std::string& series_id, cplx constant, double slack) {
    if (m < 1) throw std::invalid_argument("compare_limit: m >= 1");
    if (samples.size() < 2) throw std::invalid_argument("compare_limit: need samples");
    u64 x_min = samples.front().x, x_max = samples.front().x;
    for (const auto& s : samples) {
        x_min = std::min(x_min, s.x);
        x_max = std::max(x_max, s.x);
    }
    if (static_cast<double>(x_max) < 9999.0 * static_cast<double>(x_min))
        throw std::invalid_argument("compare_limit: samples must span >= 4 decades");

    cplx scale_exp = root_of_unity(1, m);  // e^{2 pi i/m}
    AsymptoticComparison cmp;
    cmp.m = m;
    cmp.series_id = series_id;
    cmp.samples = samples;
    cmp.predicted_constant = constant;

    std::vector<double> products;
    for (const auto& s : samples) {
        double xd = static_cast<double>(s.x);
        cplx scaled = s.value * complex_log_power(xd, scale_exp);
        double R = std::abs(scaled - constant);
        cmp.remainders.emplace_back(s.x, R);
        double prod = R * std::log(xd);
        cmp.remainder_times_logx.emplace_back(s.x, prod);
        products.push_back(prod);
    }
    double med = median(products);
    double mx = *std::max_element(products.begin(), products.end());
    cmp.max_over_median = (med > 0.0) ? mx / med : (mx == 0.0 ? 1.0 : HUGE_VAL);
    cmp.verdict = cmp.max_over_median <= slack;
    return cmp;
}

cplx estimate_constant(const std::vector<SeriesSample>& samples, cplx z, cplx scale_constant) {
    if (z.real() >= 1.0) throw std::invalid_argument("estimate_constant: need Re(z) < 1");
    if (samples.empty()) throw std::invalid_argument("estimate_constant: no samples");
    u64 x_min = samples.front().x, x_max = samples.front().x;
    for (const auto& s : samples) {
        x_min = std::min(x_min, s.x);
        x_max = std::max(x_max, s.x);
    }
    if (static_cast<double>(x_max) < 999.0 * static_cast<double>(x_min))
        throw std::invalid_argument("estimate_constant: samples must span >= 3 decades");

    // remainder decays like (log x)^{Re z - 1}: only the top decade is unbiased
    double cutoff = static_cast<double>(x_max) / 10.0;
    KahanComplex acc;
    int used = 0;
    for (const auto& s : samples) {
        if (static_cast<double>(s.x) < cutoff) continue;
        acc.add(s.value - scale_constant * complex_log_power(static_cast<double>(s.x), z));
        ++used;
    }
    return acc.value() / static_cast<double>(used);
}

std::vector<u64> asymptotic_sample_grid(u64 limit) {
    std::vector<u64> pts;
    for (double e = 3.0;; e += 0.25) {
        u64 x = static_cast<u64>(std::floor(std::pow(10.0, e) + 0.5));
        if (x >= limit) break;
        pts.push_back(x);
    }
    if (limit >= 1000) pts.push_back(limit);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace omegalab
