#include <doctest.h>

#include <cmath>

#include "omegalab/euler_products.hpp"

using namespace omegalab;

TEST_SUITE_BEGIN("euler");

static const PrimeTable& primes_1e6() {
    static PrimeTable t = build_prime_table(1'000'000);
    return t;
}

static const PrimeTable& primes_1e7() {
    static PrimeTable t = build_prime_table(10'000'000);
    return t;
}

TEST_CASE("reciprocal gamma point values") {
    CHECK(std::abs(gamma_reciprocal(cplx{0.0, 0.0}) - cplx{1.0, 0.0}) < 1e-13);
    CHECK(std::abs(gamma_reciprocal(cplx{1.0, 0.0}) - cplx{1.0, 0.0}) < 1e-13);
    CHECK(gamma_reciprocal(cplx{-1.0, 0.0}) == cplx{0.0, 0.0});
    CHECK(gamma_reciprocal(cplx{-3.0, 0.0}) == cplx{0.0, 0.0});
    // Gamma(1/2) = sqrt(pi)
    CHECK(std::abs(reciprocal_gamma(cplx{0.5, 0.0}) - cplx{1.0 / std::sqrt(M_PI), 0.0}) < 1e-13);
    // |Gamma(1+i)|^2 = pi/sinh(pi)
    double expect = std::sqrt(std::sinh(M_PI) / M_PI);
    CHECK(std::abs(std::abs(gamma_reciprocal(cplx{0.0, 1.0})) - expect) < 1e-12);
    // Gamma(5) = 24
    CHECK(std::abs(reciprocal_gamma(cplx{5.0, 0.0}) - cplx{1.0 / 24.0, 0.0}) < 1e-14);
}

TEST_CASE("reflection identity on the unit disk") {
    for (double re : {-0.9, -0.4, 0.0, 0.3, 0.8}) {
        for (double im : {-0.7, -0.2, 0.4, 0.9}) {
            cplx z{re, im};
            cplx lhs = gamma_reciprocal(z) * gamma_reciprocal(-z);
            cplx rhs = std::sin(M_PI * z) / (M_PI * z);
            REQUIRE(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("zeta by Euler-Maclaurin") {
    CHECK(std::abs(zeta_complex(cplx{2.0, 0.0}) - cplx{M_PI * M_PI / 6.0, 0.0}) < 1e-12);
    CHECK(std::abs(zeta_complex(cplx{4.0, 0.0}) - cplx{std::pow(M_PI, 4) / 90.0, 0.0}) < 1e-12);
    CHECK(std::abs(zeta_complex(cplx{3.0, 0.0}).real() - 1.2020569031595942854) < 1e-12);
    CHECK_THROWS_AS(zeta_complex(cplx{1.0, 0.0}), std::domain_error);
}

TEST_CASE("prime zeta") {
    // P(2) = 0.45224742004106549850653...
    CHECK(std::abs(prime_zeta(cplx{2.0, 0.0}).real() - 0.45224742004106549851) < 1e-12);
    // P(3) = 0.17476263929944353642...
    CHECK(std::abs(prime_zeta(cplx{3.0, 0.0}).real() - 0.17476263929944353642) < 1e-12);
    CHECK_THROWS_AS(prime_zeta(cplx{1.0, 0.0}), std::domain_error);
}

TEST_CASE("euler constants: telescoping and squarefree density") {
    EulerProductSpec f{EulerKind::F, cplx{1.0, 0.0}, 1'000'000, 2};
    EulerConstantResult rf = euler_constant(f, primes_1e6());
    CHECK(std::abs(rf.value - cplx{1.0, 0.0}) < 1e-9);

    EulerProductSpec g{EulerKind::G, cplx{1.0, 0.0}, 1'000'000, 2};
    EulerConstantResult rg = euler_constant(g, primes_1e6());
    CHECK(std::abs(rg.value - cplx{6.0 / (M_PI * M_PI), 0.0}) < 1e-6);
    CHECK(std::abs(rg.value - cplx{6.0 / (M_PI * M_PI), 0.0}) < 1e-9);
}

TEST_CASE("euler constants: closed forms at z = -i") {
    EulerProductSpec sg{EulerKind::ScriptG, cplx{0.0, -1.0}, 1'000'000, 2};
    EulerConstantResult rg = euler_constant(sg, primes_1e6());
    CHECK(std::abs(std::abs(rg.value) - std::sqrt(15.0 * std::sinh(M_PI) / std::pow(M_PI, 3))) <
          1e-6);

    EulerProductSpec sh{EulerKind::ScriptH, cplx{0.0, -1.0}, 1'000'000, 2};
    EulerConstantResult rh = euler_constant(sh, primes_1e6());
    CHECK(std::abs(std::abs(rh.value) - std::sqrt(M_PI * std::sinh(M_PI) / 15.0)) < 1e-6);
}

TEST_CASE("euler constants: exact zeros at z = -1") {
    for (EulerKind k : {EulerKind::F, EulerKind::G, EulerKind::H}) {
        EulerProductSpec s{k, cplx{-1.0, 0.0}, 100'000, 2};
        EulerConstantResult r = euler_constant(s, primes_1e6());
        CHECK(r.value == cplx{0.0, 0.0});
        CHECK(r.zero_factor);
    }
}

TEST_CASE("euler constants: domain errors") {
    EulerProductSpec h{EulerKind::H, cplx{2.5, 0.0}, 100'000, 2};
    CHECK_THROWS_AS(euler_constant(h, primes_1e6()), std::domain_error);
    EulerProductSpec tiny{EulerKind::G, cplx{0.5, 0.0}, 50, 2};
    CHECK_THROWS_AS(euler_constant(tiny, primes_1e6()), std::invalid_argument);
}

TEST_CASE("tail honesty: 10x larger prime limit moves less than the estimate") {
    std::vector<EulerProductSpec> specs = {
        {EulerKind::ScriptG, cplx{0.0, -1.0}, 100'000, 2},
        {EulerKind::ScriptH, cplx{0.0, -1.0}, 100'000, 2},
        {EulerKind::G, cplx{1.0, 0.0}, 100'000, 2},
        {EulerKind::ScriptF, -root_of_unity(1, 5), 100'000, 2},
    };
    for (auto spec : specs) {
        EulerConstantResult small = euler_constant(spec, primes_1e6());
        spec.prime_limit = 1'000'000;
        EulerConstantResult large = euler_constant(spec, primes_1e6());
        CHECK(std::abs(small.value - large.value) < small.tail_estimate);
    }
}

TEST_CASE("conjugate symmetry") {
    for (EulerKind k : {EulerKind::ScriptF, EulerKind::ScriptG, EulerKind::ScriptH}) {
        cplx z = -root_of_unity(1, 5);
        EulerProductSpec a{k, z, 100'000, 2};
        EulerProductSpec b{k, std::conj(z), 100'000, 2};
        cplx va = euler_constant(a, primes_1e6()).value;
        cplx vb = euler_constant(b, primes_1e6()).value;
        CHECK(std::abs(vb - std::conj(va)) < 1e-12);
    }
}

TEST_CASE("partial products of |1 + e^{2 pi i/m}/p|") {
    SUBCASE("m=4 converges to sqrt(15)/pi, squares to zeta(2)/zeta(4)") {
        auto rows = abs_partial_product(4, 10'000'000, primes_1e7());
        double v = rows.back().second;
        CHECK(std::abs(v - std::sqrt(15.0) / M_PI) < 1e-5);
        CHECK(std::abs(v * v - 15.0 / (M_PI * M_PI)) < 1e-7);
    }
    SUBCASE("m=3 decreases monotonically toward zero") {
        auto rows = abs_partial_product(3, 1'000'000, primes_1e6());
        for (std::size_t i = 1; i < rows.size(); ++i) REQUIRE(rows[i].second < rows[i - 1].second);
    }
    SUBCASE("m=5 grows without bound") {
        auto rows = abs_partial_product(5, 1'000'000, primes_1e6());
        double at_1e3 = 0, at_end = rows.back().second;
        for (const auto& [x, v] : rows)
            if (x == 1000) at_1e3 = v;
        CHECK(at_end > at_1e3);
        CHECK(1.0 / at_end < 1.0 / at_1e3);
    }
}

TEST_CASE("truncated zeta_m and zeta*_m") {
    // zeta_2 = zeta
    TruncatedValue z2 = zeta_m(cplx{2.0, 0.0}, 2, 100'000, primes_1e6());
    CHECK(std::abs(z2.value - cplx{M_PI * M_PI / 6.0, 0.0}) < 1e-8);

    // zeta*_1(2) = zeta(4)/zeta(2) = pi^2/15
    TruncatedValue zs = zeta_star_m(cplx{2.0, 0.0}, 1, 100'000, primes_1e6());
    CHECK(std::abs(zs.value - cplx{M_PI * M_PI / 15.0, 0.0}) < 1e-8);

    for (int m : {1, 3, 4, 5, 6, 12}) {
        TruncatedValue a = zeta_m(cplx{3.0, 0.0}, m, 100'000, primes_1e6());
        TruncatedValue b = zeta_star_m(cplx{3.0, 0.0}, m, 100'000, primes_1e6());
        REQUIRE(std::abs(a.value) > 0.0);
        REQUIRE(std::abs(b.value) > 0.0);
    }

    CHECK_THROWS_AS(zeta_m(cplx{1.0, 0.0}, 4, 100'000, primes_1e6()), std::domain_error);
    CHECK_THROWS_AS(zeta_star_m(cplx{0.9, 0.0}, 4, 100'000, primes_1e6()), std::domain_error);
}

TEST_CASE("log-derivative prime sums v and v*") {
    const cplx s{2.0, 0.0};
    const int m = 5;
    const cplx z = -root_of_unity(1, m);

    SUBCASE("per-prime algebraic identity of the v summand") {
        double lnp = std::log(2.0);
        cplx ps = cplx{4.0, 0.0};  // 2^2
        cplx direct = (z * z - z) * lnp / ((ps - 1.0) * (ps - 1.0 + z));
        cplx split = -z * ps * lnp / ((ps - 1.0) * (ps - 1.0 + z)) + z * lnp / (ps - 1.0);
        CHECK(std::abs(direct - split) < 1e-12);
    }

    SUBCASE("v* equals its logarithmic-derivative form") {
        TruncatedValue route_a = v_star(s, m, 1'000'000, primes_1e6());
        cplx u = root_of_unity(1, m);
        KahanComplex route_b;
        for (u32 p : primes_1e6().primes) {
            double lnp = std::log(static_cast<double>(p));
            cplx w = std::exp(-s * lnp);
            route_b.add(lnp * (u * w / (cplx{1.0, 0.0} + u * w) - u * w / (cplx{1.0, 0.0} - w)));
        }
        CHECK(std::abs(route_a.value - route_b.value()) < 2e-9);
    }

    SUBCASE("v(1) is finite for m=5 (1 > log2(2 cos(pi/5)))") {
        CHECK(std::log2(2.0 * std::cos(M_PI / 5.0)) < 1.0);
        TruncatedValue v1 = v_func(cplx{1.0, 0.0}, 5, 100'000, primes_1e6());
        CHECK(std::isfinite(v1.value.real()));
        CHECK(std::isfinite(v1.value.imag()));
    }

    SUBCASE("domain errors") {
        CHECK_THROWS_AS(v_star(cplx{0.4, 0.0}, 5, 100'000, primes_1e6()), std::domain_error);
        CHECK_THROWS_AS(v_func(cplx{0.5, 0.0}, 5, 100'000, primes_1e6()), std::domain_error);
        CHECK_THROWS_AS(v_func(cplx{2.0, 0.0}, 4, 100'000, primes_1e6()), std::invalid_argument);
    }
}

TEST_SUITE_END();
