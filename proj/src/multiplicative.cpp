#include "omegalab/multiplicative.hpp"

#include <algorithm>

namespace omegalab {

RootOfUnityParams RootOfUnityParams::make(int m) {
    if (m < 1) throw std::invalid_argument("RootOfUnityParams: m must be positive");
    RootOfUnityParams p;
    p.m = m;
    p.unit = root_of_unity(1, m);
    p.z = -p.unit;
    p.z_pow.resize(kMaxExponent + 1);
    for (int k = 0; k <= kMaxExponent; ++k) {
        cplx root = root_of_unity(k % m, m);
        p.z_pow[static_cast<std::size_t>(k)] = (k & 1) ? -root : root;
    }
    return p;
}

cplx mu_m(u64, const RootOfUnityParams& params, const FactorCounts& counts) {
    if (counts.mobius == 0) return {0.0, 0.0};
    return params.z_power(counts.omega);
}

cplx nu_m(u64, const RootOfUnityParams& params, const FactorCounts& counts) {
    return params.z_power(counts.omega);
}

cplx nu_star_m(u64, const RootOfUnityParams& params, const FactorCounts& counts) {
    return params.z_power(counts.big_omega);
}

cplx mu_star_m(u64, const RootOfUnityParams& params, const FactorCounts& counts) {
    if (counts.mobius == 0) return {0.0, 0.0};
    cplx v = params.z_power(counts.omega);
    return (counts.big_omega & 1) ? -v : v;
}

std::vector<cplx> dirichlet_convolve(const std::vector<cplx>& f, const std::vector<cplx>& g) {
    if (f.size() != g.size()) throw std::invalid_argument("dirichlet_convolve: length mismatch");
    std::size_t n = f.size();
    if (n == 0) throw std::invalid_argument("dirichlet_convolve: empty input");
    std::vector<cplx> h(n, cplx{0.0, 0.0});
    for (std::size_t d = 1; d <= n; ++d) {
        cplx fd = f[d - 1];
        if (fd == cplx{0.0, 0.0}) continue;
        for (std::size_t q = 1; d * q <= n; ++q) h[d * q - 1] += fd * g[q - 1];
    }
    return h;
}

std::vector<cplx> power_table(cplx w, int max_exp) {
    std::vector<cplx> t(static_cast<std::size_t>(max_exp) + 1);
    t[0] = {1.0, 0.0};  // empty product, also for w = 0
    for (int k = 1; k <= max_exp; ++k) t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k - 1)] * w;
    return t;
}

SymbolArrays SymbolArrays::build(u64 n_max) {
    if (n_max < 1) throw std::invalid_argument("SymbolArrays: n_max >= 1");
    u64 root = isqrt_u64(n_max);
    PrimeTable table = build_prime_table(std::max<u64>(root, 2));
    FactorCountBlock b = sieve_block(1, n_max + 1, table);
    SymbolArrays s;
    s.omega = std::move(b.omega);
    s.big_omega = std::move(b.big_omega);
    s.mobius = std::move(b.mobius);
    return s;
}

static int max_u8(const std::vector<u8>& v) {
    int m = 0;
    for (u8 x : v) m = std::max(m, static_cast<int>(x));
    return m;
}

ThresholdReport check_eq_3_2(const RootOfUnityParams& params, u64 n_max, double tol) {
    if (n_max < 1) throw std::invalid_argument("check_eq_3_2: n_max >= 1");
    SymbolArrays sym = SymbolArrays::build(n_max);

    std::vector<cplx> lhs(n_max, cplx{0.0, 0.0});
    for (u64 d = 1; d <= n_max; ++d) {
        cplx md = mu_m(d, params, sym.at(d));
        if (md == cplx{0.0, 0.0}) continue;
        for (u64 n = d; n <= n_max; n += d) lhs[n - 1] += md;
    }

    std::vector<cplx> wpow = power_table(cplx{1.0, 0.0} - params.unit, max_u8(sym.omega));
    ThresholdReport rep;
    rep.claim_id = "eq3.2(m=" + std::to_string(params.m) + ")";
    rep.range_lo = 1;
    rep.range_hi = n_max;
    double worst = 0.0;
    for (u64 n = 1; n <= n_max; ++n) {
        double r = std::abs(lhs[n - 1] - wpow[sym.omega[n - 1]]);
        if (r > worst) worst = r;
        if (r > tol && !rep.first_violation) rep.first_violation = n;
    }
    rep.max_residual = worst;
    rep.holds = !rep.first_violation.has_value();
    return rep;
}

ThresholdReport check_eq_1_6(const RootOfUnityParams& params, u64 n_max, double tol) {
    if (n_max < 1) throw std::invalid_argument("check_eq_1_6: n_max >= 1");
    SymbolArrays sym = SymbolArrays::build(n_max);

    std::vector<cplx> hpow = power_table(cplx{1.0, 0.0} + params.unit, max_u8(sym.big_omega));
    std::vector<cplx> nu(n_max), h(n_max);
    for (u64 n = 1; n <= n_max; ++n) {
        nu[n - 1] = params.z_power(sym.omega[n - 1]);
        h[n - 1] = hpow[sym.big_omega[n - 1]];
    }
    std::vector<cplx> conv = dirichlet_convolve(nu, h);

    ThresholdReport rep;
    rep.claim_id = "eq1.6(m=" + std::to_string(params.m) + ")";
    rep.range_lo = 1;
    rep.range_hi = n_max;
    double worst = 0.0;
    for (u64 n = 1; n <= n_max; ++n) {
        double r = std::abs(conv[n - 1] - cplx{1.0, 0.0});
        if (r > worst) worst = r;
        if (r > tol && !rep.first_violation) rep.first_violation = n;
    }
    rep.max_residual = worst;
    rep.holds = !rep.first_violation.has_value();
    return rep;
}

ThresholdReport check_lemma_3_1(const RootOfUnityParams& params, const std::vector<u64>& xs,
                                double tol) {
    if (xs.empty()) throw std::invalid_argument("check_lemma_3_1: no evaluation points");
    u64 x_max = *std::max_element(xs.begin(), xs.end());
    if (x_max < 1) throw std::invalid_argument("check_lemma_3_1: x >= 1");
    SymbolArrays sym = SymbolArrays::build(x_max);
    std::vector<cplx> wpow = power_table(cplx{1.0, 0.0} - params.unit, max_u8(sym.omega));

    ThresholdReport rep;
    rep.claim_id = "lemma3.1(m=" + std::to_string(params.m) + ")";
    rep.range_lo = *std::min_element(xs.begin(), xs.end());
    rep.range_hi = x_max;
    double worst = 0.0;
    for (u64 x : xs) {
        KahanComplex lhs, rhs;
        for (u64 n = 1; n <= x; ++n) {
            cplx md = mu_m(n, params, sym.at(n));
            if (md != cplx{0.0, 0.0})
                lhs.add(md * static_cast<double>(x / n));
            rhs.add(wpow[sym.omega[n - 1]]);
        }
        double r = std::abs(lhs.value() - rhs.value());
        if (r > worst) worst = r;
        if (r > tol && !rep.first_violation) rep.first_violation = x;
    }
    rep.max_residual = worst;
    rep.holds = !rep.first_violation.has_value();
    return rep;
}

i64 liouville_floor_sum(u64 x, const SymbolArrays& sym) {
    i64 sum = 0;
    for (u64 d = 1; d <= x; ++d) {
        i64 lam = (sym.big_omega[d - 1] & 1) ? -1 : 1;
        sum += lam * static_cast<i64>(x / d);
    }
    return sum;
}

ThresholdReport check_remark_3_1(u64 x_max) {
    if (x_max < 1) throw std::invalid_argument("check_remark_3_1: x >= 1");
    SymbolArrays sym = SymbolArrays::build(x_max);
    ThresholdReport rep;
    rep.claim_id = "remark3.1";
    rep.range_lo = 1;
    rep.range_hi = x_max;
    for (u64 x = 1; x <= x_max; ++x) {
        if (liouville_floor_sum(x, sym) != static_cast<i64>(isqrt_u64(x))) {
            rep.first_violation = x;
            break;
        }
    }
    rep.max_residual = 0.0;
    rep.holds = !rep.first_violation.has_value();
    return rep;
}

double dirichlet_inverse_residual(const RootOfUnityParams& params, u64 n_max) {
    SymbolArrays sym = SymbolArrays::build(n_max);
    std::vector<cplx> f(n_max), g(n_max);
    for (u64 n = 1; n <= n_max; ++n) {
        f[n - 1] = mu_star_m(n, params, sym.at(n));
        g[n - 1] = nu_star_m(n, params, sym.at(n));
    }
    std::vector<cplx> conv = dirichlet_convolve(f, g);
    double worst = 0.0;
    for (u64 n = 1; n <= n_max; ++n) {
        cplx eps = (n == 1) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
        worst = std::max(worst, std::abs(conv[n - 1] - eps));
    }
    return worst;
}

}  // namespace omegalab
