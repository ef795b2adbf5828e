#include "omegalab/euler_products.hpp"

#include <algorithm>
#include <cmath>

namespace omegalab {

EulerKind euler_kind_from_string(const std::string& s) {
    if (s == "F") return EulerKind::F;
    if (s == "G") return EulerKind::G;
    if (s == "H") return EulerKind::H;
    if (s == "scriptF") return EulerKind::ScriptF;
    if (s == "scriptG") return EulerKind::ScriptG;
    if (s == "scriptH") return EulerKind::ScriptH;
    throw std::invalid_argument("unknown Euler-constant kind: " + s);
}

std::string euler_kind_name(EulerKind k) {
    switch (k) {
        case EulerKind::F: return "F";
        case EulerKind::G: return "G";
        case EulerKind::H: return "H";
        case EulerKind::ScriptF: return "scriptF";
        case EulerKind::ScriptG: return "scriptG";
        case EulerKind::ScriptH: return "scriptH";
    }
    return "?";
}

static bool is_nonpositive_integer(cplx w) {
    return w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::nearbyint(w.real());
}

// ---------------------------------------------------------------------------
// reciprocal Gamma (Lanczos, g = 7, 9 coefficients) with reflection
// ---------------------------------------------------------------------------

static cplx lanczos_gamma_half_plane(cplx w) {
    // valid for Re(w) >= 0.5
    static const double coef[9] = {
        0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
        771.32342877765313,   -176.61502916214059, 12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    w -= 1.0;
    cplx x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (w + static_cast<double>(i));
    cplx t = w + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, w + 0.5) * std::exp(-t) * x;
}

cplx reciprocal_gamma(cplx w) {
    if (is_nonpositive_integer(w)) return {0.0, 0.0};
    if (w.real() < 0.5) {
        // 1/Gamma(w) = sin(pi w)/pi * Gamma(1-w)
        return std::sin(M_PI * w) / M_PI * lanczos_gamma_half_plane(1.0 - w);
    }
    return 1.0 / lanczos_gamma_half_plane(w);
}

cplx gamma_reciprocal(cplx z) { return reciprocal_gamma(1.0 + z); }

// ---------------------------------------------------------------------------
// zeta / prime zeta
// ---------------------------------------------------------------------------

cplx zeta_complex(cplx s) {
    if (s.real() <= 1.0) throw std::domain_error("zeta_complex: need Re(s) > 1");
    if (s.real() >= 30.0) {
        cplx sum{1.0, 0.0};
        for (int n = 2; n <= 16; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
        return sum;
    }
    // Euler-Maclaurin
    int N = std::max(64, static_cast<int>(std::ceil(3.0 * std::abs(s))));
    static const double b2k_over_fact[8] = {
        1.0 / 12.0,                    // B2/2!
        -1.0 / 720.0,                  // B4/4!
        1.0 / 30240.0,                 // B6/6!
        -1.0 / 1209600.0,              // B8/8!
        1.0 / 47900160.0,              // B10/10!
        -691.0 / 1307674368000.0,      // B12/12!
        1.0 / 74724249600.0,           // B14/14!
        -3617.0 / 10670622842880000.0  // B16/16!
    };
    KahanComplex sum;
    for (int n = 1; n < N; ++n) sum.add(std::exp(-s * std::log(static_cast<double>(n))));
    double lnN = std::log(static_cast<double>(N));
    cplx Ns = std::exp(-s * lnN);  // N^{-s}
    cplx total = sum.value();
    total += Ns * static_cast<double>(N) / (s - 1.0);  // N^{1-s}/(s-1)
    total += 0.5 * Ns;
    cplx poch = s;             // s (s+1) ... rising
    cplx npow = Ns / static_cast<double>(N);  // N^{-s-1}
    for (int r = 0; r < 8; ++r) {
        total += b2k_over_fact[r] * poch * npow;
        poch *= (s + static_cast<double>(2 * r + 1)) * (s + static_cast<double>(2 * r + 2));
        npow /= static_cast<double>(N) * static_cast<double>(N);
    }
    return total;
}

cplx prime_zeta(cplx s) {
    if (s.real() < 1.1) throw std::domain_error("prime_zeta: need Re(s) >= 1.1");
    int jmax = static_cast<int>(std::ceil(64.0 / s.real()));
    jmax = std::min(jmax, 64);
    cplx total{0.0, 0.0};
    for (int j = 1; j <= jmax; ++j) {
        int om, bo, mo;
        factor_counts_oracle(static_cast<u64>(j), om, bo, mo);
        if (mo == 0) continue;
        cplx lz = std::log(zeta_complex(static_cast<double>(j) * s));
        total += (static_cast<double>(mo) / static_cast<double>(j)) * lz;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Selberg-Delange constants
// ---------------------------------------------------------------------------

EulerConstantResult euler_constant(const EulerProductSpec& spec, const PrimeTable& primes) {
    if (spec.prime_limit < 100)
        throw std::invalid_argument("euler_constant: prime_limit >= 100 required");
    if (primes.limit < spec.prime_limit)
        throw std::logic_error("euler_constant: prime table smaller than prime_limit");
    if (spec.tail_order < 0) throw std::invalid_argument("euler_constant: tail_order >= 0");

    const cplx z = spec.z;
    const bool script = spec.kind == EulerKind::ScriptF || spec.kind == EulerKind::ScriptG ||
                        spec.kind == EulerKind::ScriptH;
    const bool hkind = spec.kind == EulerKind::H || spec.kind == EulerKind::ScriptH;
    const bool fkind = spec.kind == EulerKind::F || spec.kind == EulerKind::ScriptF;

    if (hkind && std::abs(z) >= 2.0)
        throw std::domain_error("euler_constant: H-type products require |z| < 2");

    EulerConstantResult res;
    res.prime_limit = spec.prime_limit;

    // Gamma prefactor; its zeros (z or 1+z at nonpositive integers) force the
    // whole constant to zero exactly, same as a vanishing local factor.
    cplx gamma_arg = script ? (cplx{1.0, 0.0} + z) : z;
    if (is_nonpositive_integer(gamma_arg)) {
        res.zero_factor = true;
        return res;
    }

    const int k_top = spec.tail_order + 1;  // expansion corrected through t^{k_top}
    KahanComplex logsum;
    std::vector<Kahan> psum(static_cast<std::size_t>(k_top) + 1);

    for (u32 p : primes.primes) {
        if (static_cast<u64>(p) > spec.prime_limit) break;
        double pd = static_cast<double>(p);
        double t = 1.0 / pd;
        cplx term;
        if (hkind) {
            cplx denom = cplx{1.0, 0.0} - z * t;  // Re > 0 since |z| < 2 <= p
            if (denom == cplx{0.0, 0.0})
                throw std::domain_error("euler_constant: vanishing H local factor");
            term = -std::log(denom) + z * std::log1p(-t);
        } else {
            cplx main = fkind ? cplx{1.0, 0.0} + z / (pd - 1.0) : cplx{1.0, 0.0} + z * t;
            if (main == cplx{0.0, 0.0}) {
                res.value = {0.0, 0.0};
                res.zero_factor = true;
                return res;
            }
            if (main.real() <= 0.0)
                throw std::domain_error("euler_constant: local factor crossed the branch cut");
            term = std::log(main) + z * std::log1p(-t);
        }
        logsum.add(term);
        double tk = t * t;
        for (int k = 2; k <= k_top; ++k) {
            psum[static_cast<std::size_t>(k)].add(tk);
            tk *= t;
        }
    }

    // tail of the log-sum, corrected with prime-zeta values:
    //   F-type: f(t) = log(1+(z-1)t) + (z-1)log(1-t)  -> coefficients in (z-1)
    //   G-type: f(t) = log(1+z t)    + z log(1-t)
    //   H-type: f(t) = -log(1-z t)   + z log(1-t)
    cplx zz = fkind ? z - cplx{1.0, 0.0} : z;
    cplx corr{0.0, 0.0};
    for (int k = 2; k <= k_top; ++k) {
        cplx ck;
        if (hkind)
            ck = (std::pow(z, k) - z) / static_cast<double>(k);
        else
            ck = (((k & 1) ? 1.0 : -1.0) * std::pow(zz, k) - zz) / static_cast<double>(k);
        double pk = prime_zeta(cplx{static_cast<double>(k), 0.0}).real();
        corr += ck * (pk - psum[static_cast<std::size_t>(k)].value());
    }

    double Rb = std::max(std::abs(zz), 1.0);
    double P = static_cast<double>(spec.prime_limit);
    double tail_log = 2.0 / static_cast<double>(k_top + 1) * std::pow(Rb, k_top + 1) /
                      (1.0 - Rb / P) * std::pow(P, -static_cast<double>(k_top)) /
                      static_cast<double>(k_top);

    cplx pref = reciprocal_gamma(gamma_arg);
    res.value = pref * std::exp(logsum.value() + corr);
    res.tail_estimate = std::abs(res.value) * (tail_log + 1e-13) + 1e-300;
    return res;
}

// ---------------------------------------------------------------------------
// partial products and truncated zeta_m / zeta*_m
// ---------------------------------------------------------------------------

std::vector<std::pair<u64, double>> abs_partial_product(int m, u64 prime_limit,
                                                        const PrimeTable& primes) {
    if (m < 1) throw std::invalid_argument("abs_partial_product: m >= 1");
    if (prime_limit < 100) throw std::invalid_argument("abs_partial_product: prime_limit >= 100");
    if (primes.limit < prime_limit)
        throw std::logic_error("abs_partial_product: prime table too small");

    std::vector<u64> pts;
    for (double e = 1.0;; e += 0.25) {
        u64 x = static_cast<u64>(std::floor(std::pow(10.0, e)));
        if (x >= prime_limit) break;
        pts.push_back(x);
    }
    pts.push_back(prime_limit);

    cplx u = root_of_unity(1, m);
    Kahan logsum;
    std::vector<std::pair<u64, double>> out;
    std::size_t idx = 0;
    for (u32 p : primes.primes) {
        if (static_cast<u64>(p) > prime_limit) break;
        while (idx < pts.size() && static_cast<u64>(p) > pts[idx]) {
            out.emplace_back(pts[idx], std::exp(logsum.value()));
            ++idx;
        }
        cplx f = cplx{1.0, 0.0} + u / static_cast<double>(p);
        logsum.add(0.5 * std::log(std::norm(f)));
    }
    while (idx < pts.size()) {
        out.emplace_back(pts[idx], std::exp(logsum.value()));
        ++idx;
    }
    return out;
}

static TruncatedValue zeta_m_impl(cplx s, int m, u64 prime_limit, const PrimeTable& primes,
                                  bool star) {
    if (m < 1) throw std::invalid_argument("zeta_m: m >= 1");
    if (s.real() <= 1.0) throw std::domain_error("zeta_m: need Re(s) > 1");
    if (prime_limit < 100) throw std::invalid_argument("zeta_m: prime_limit >= 100");
    if (primes.limit < prime_limit) throw std::logic_error("zeta_m: prime table too small");

    cplx u = root_of_unity(1, m);
    KahanComplex logsum, pz1, pz2;
    for (u32 p : primes.primes) {
        if (static_cast<u64>(p) > prime_limit) break;
        double lnp = std::log(static_cast<double>(p));
        cplx w = std::exp(-s * lnp);  // p^{-s}
        cplx term;
        if (star) {
            term = -std::log(cplx{1.0, 0.0} + u * w);
        } else {
            cplx ps = std::exp(s * lnp);
            term = std::log(cplx{1.0, 0.0} - u / (ps - 1.0));
        }
        logsum.add(term);
        pz1.add(w);
        pz2.add(w * w);
    }

    double sigma = s.real();
    double P = static_cast<double>(prime_limit);
    cplx corr{0.0, 0.0};
    double bound;
    if (sigma >= 1.1) {
        cplx pt1 = prime_zeta(s) - pz1.value();
        cplx pt2 = prime_zeta(2.0 * s) - pz2.value();
        corr = star ? (-u * pt1 + 0.5 * u * u * pt2) : (-u * pt1 - (u + 0.5 * u * u) * pt2);
        bound = 3.0 * std::pow(P, 1.0 - 3.0 * sigma) / (3.0 * sigma - 1.0);
    } else {
        bound = 2.0 * std::pow(P, 1.0 - sigma) / (sigma - 1.0);
    }

    TruncatedValue out;
    out.value = std::exp(logsum.value() + corr);
    out.tail_estimate = std::abs(out.value) * (bound + 1e-13);
    return out;
}

TruncatedValue zeta_m(cplx s, int m, u64 prime_limit, const PrimeTable& primes) {
    return zeta_m_impl(s, m, prime_limit, primes, false);
}

TruncatedValue zeta_star_m(cplx s, int m, u64 prime_limit, const PrimeTable& primes) {
    return zeta_m_impl(s, m, prime_limit, primes, true);
}

// ---------------------------------------------------------------------------
// v(s), v*(s)
// ---------------------------------------------------------------------------

static double log_weighted_tail(double P, double two_sigma_minus_1, double C) {
    // C * int_P^inf ln(x) x^{-(1+a)} dx with a = two_sigma_minus_1
    double a = two_sigma_minus_1;
    return C * std::pow(P, -a) * (std::log(P) / a + 1.0 / (a * a));
}

TruncatedValue v_star(cplx s, int m, u64 prime_limit, const PrimeTable& primes) {
    if (m < 1) throw std::invalid_argument("v_star: m >= 1");
    if (s.real() <= 0.5) throw std::domain_error("v_star: need Re(s) > 1/2");
    if (primes.limit < prime_limit) throw std::logic_error("v_star: prime table too small");

    cplx z = -root_of_unity(1, m);
    KahanComplex sum;
    for (u32 p : primes.primes) {
        if (static_cast<u64>(p) > prime_limit) break;
        double lnp = std::log(static_cast<double>(p));
        cplx w = std::exp(-s * lnp);
        cplx zw = z * w;
        // sum_{k>=2} (z - z^k) w^k = z w^2/(1-w) - (z w)^2/(1-z w)
        cplx inner = z * w * w / (cplx{1.0, 0.0} - w) - zw * zw / (cplx{1.0, 0.0} - zw);
        sum.add(lnp * inner);
    }
    TruncatedValue out;
    out.value = sum.value();
    double sigma = s.real();
    out.tail_estimate =
        log_weighted_tail(static_cast<double>(prime_limit), 2.0 * sigma - 1.0, 8.0);
    return out;
}

TruncatedValue v_func(cplx s, int m, u64 prime_limit, const PrimeTable& primes) {
    if (m <= 4) throw std::invalid_argument("v_func: m > 4 required");
    double sigma_min = std::log2(2.0 * std::cos(M_PI / static_cast<double>(m)));
    if (s.real() <= sigma_min) throw std::domain_error("v_func: Re(s) too small for this m");
    if (primes.limit < prime_limit) throw std::logic_error("v_func: prime table too small");

    cplx z = -root_of_unity(1, m);
    KahanComplex sum;
    for (u32 p : primes.primes) {
        if (static_cast<u64>(p) > prime_limit) break;
        double lnp = std::log(static_cast<double>(p));
        cplx ps = std::exp(s * lnp);
        sum.add(lnp / ((ps - 1.0) * (ps - 1.0 + z)));
    }
    TruncatedValue out;
    out.value = (z * z - z) * sum.value();
    double sigma = s.real();
    out.tail_estimate =
        2.0 * log_weighted_tail(static_cast<double>(prime_limit), 2.0 * sigma - 1.0, 8.0);
    return out;
}

}  // namespace omegalab
