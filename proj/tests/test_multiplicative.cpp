#include <doctest.h>

#include <numeric>
#include <random>

#include "omegalab/multiplicative.hpp"

using namespace omegalab;

TEST_SUITE_BEGIN("multiplicative");

static FactorCounts counts_of(u64 n) {
    int om, bo, mo;
    factor_counts_oracle(n, om, bo, mo);
    return {om, bo, mo};
}

TEST_CASE("root-of-unity params") {
    for (int m : {1, 2, 3, 4, 5, 6, 12}) {
        RootOfUnityParams p = RootOfUnityParams::make(m);
        CHECK(std::abs(std::abs(p.unit) - 1.0) < 1e-15);
        cplx w{1.0, 0.0};
        for (int k = 0; k < m; ++k) w *= p.unit;
        CHECK(std::abs(w - cplx{1.0, 0.0}) < 1e-12);
        CHECK(p.z.real() == -p.unit.real());
        CHECK(p.z.imag() == -p.unit.imag());
    }
    CHECK_THROWS_AS(RootOfUnityParams::make(0), std::invalid_argument);
}

TEST_CASE("mu_m point values") {
    RootOfUnityParams p4 = RootOfUnityParams::make(4);
    CHECK(mu_m(1, p4, counts_of(1)) == cplx{1.0, 0.0});
    CHECK(mu_m(4, p4, counts_of(4)) == cplx{0.0, 0.0});
    // omega(6) = 2, z = -i: (-i)^2 = -1
    CHECK(std::abs(mu_m(6, p4, counts_of(6)) - cplx{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("nu_star is Liouville at m=1, identically one at m=2") {
    RootOfUnityParams p1 = RootOfUnityParams::make(1);
    RootOfUnityParams p2 = RootOfUnityParams::make(2);
    SymbolArrays sym = SymbolArrays::build(10'000);
    for (u64 n = 1; n <= 10'000; ++n) {
        FactorCounts c = sym.at(n);
        double lambda = (c.big_omega & 1) ? -1.0 : 1.0;
        REQUIRE(nu_star_m(n, p1, c) == cplx{lambda, 0.0});
        REQUIRE(mu_m(n, p1, c) == cplx{static_cast<double>(c.mobius), 0.0});
        if (n <= 100) {
            REQUIRE(nu_m(n, p2, c) == cplx{1.0, 0.0});
            REQUIRE(nu_star_m(n, p2, c) == cplx{1.0, 0.0});
        }
    }
    RootOfUnityParams p = RootOfUnityParams::make(5);
    CHECK(nu_m(1, p, counts_of(1)) == cplx{1.0, 0.0});
    CHECK(nu_star_m(1, p, counts_of(1)) == cplx{1.0, 0.0});
    CHECK(nu_star_m(8, p1, counts_of(8)) == cplx{-1.0, 0.0});
}

TEST_CASE("mu_star point values") {
    RootOfUnityParams p4 = RootOfUnityParams::make(4);
    CHECK(mu_star_m(1, p4, counts_of(1)) == cplx{1.0, 0.0});
    // prime: mu_4(p) lambda(p) = (-i)(-1) = i
    CHECK(std::abs(mu_star_m(7, p4, counts_of(7)) - cplx{0.0, 1.0}) < 1e-15);
    CHECK(mu_star_m(4, p4, counts_of(4)) == cplx{0.0, 0.0});
}

TEST_CASE("dirichlet convolution basics") {
    SymbolArrays sym = SymbolArrays::build(100);
    std::vector<cplx> mu(10), ones10(10, cplx{1.0, 0.0});
    for (u64 n = 1; n <= 10; ++n) mu[n - 1] = cplx{static_cast<double>(sym.mobius[n - 1]), 0.0};
    std::vector<cplx> eps = dirichlet_convolve(mu, ones10);
    CHECK(eps[0] == cplx{1.0, 0.0});
    for (u64 n = 2; n <= 10; ++n) CHECK(std::abs(eps[n - 1]) < 1e-15);

    std::vector<cplx> lam(100), ones(100, cplx{1.0, 0.0});
    for (u64 n = 1; n <= 100; ++n)
        lam[n - 1] = (sym.big_omega[n - 1] & 1) ? cplx{-1.0, 0.0} : cplx{1.0, 0.0};
    std::vector<cplx> sq = dirichlet_convolve(lam, ones);
    for (u64 n = 1; n <= 100; ++n) {
        u64 r = isqrt_u64(n);
        double expect = (r * r == n) ? 1.0 : 0.0;
        REQUIRE(std::abs(sq[n - 1] - cplx{expect, 0.0}) < 1e-12);
    }

    CHECK_THROWS_AS(dirichlet_convolve(mu, ones), std::invalid_argument);
}

TEST_CASE("mu*_m is the Dirichlet inverse of nu*_m") {
    for (int m : {1, 3, 4, 5, 6, 12}) {
        RootOfUnityParams p = RootOfUnityParams::make(m);
        double res = dirichlet_inverse_residual(p, 1000);
        CHECK_MESSAGE(res < 1e-10, "m=", m, " residual=", res);
    }
}

TEST_CASE("nu*_m completely multiplicative, nu_m multiplicative on coprime") {
    SymbolArrays sym = SymbolArrays::build(1'000'000);
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<u64> dist(2, 1000);
    RootOfUnityParams p = RootOfUnityParams::make(5);
    int coprime_checked = 0;
    for (int it = 0; it < 4000; ++it) {
        u64 a = dist(rng), b = dist(rng);
        cplx star_ab = nu_star_m(a * b, p, sym.at(a * b));
        cplx star_a = nu_star_m(a, p, sym.at(a));
        cplx star_b = nu_star_m(b, p, sym.at(b));
        REQUIRE(std::abs(star_ab - star_a * star_b) < 1e-12);
        if (std::gcd(a, b) == 1) {
            ++coprime_checked;
            cplx nu_ab = nu_m(a * b, p, sym.at(a * b));
            REQUIRE(std::abs(nu_ab - nu_m(a, p, sym.at(a)) * nu_m(b, p, sym.at(b))) < 1e-12);
        }
    }
    CHECK(coprime_checked > 1000);
}

TEST_CASE("divisor sums of mu_m (eq. 3.2 pattern)") {
    SUBCASE("m=1 degenerate base") {
        RootOfUnityParams p = RootOfUnityParams::make(1);
        ThresholdReport r = check_eq_3_2(p, 500);
        CHECK(r.holds);
        CHECK(*r.max_residual < 1e-12);
    }
    SUBCASE("m=6 at 1e4") {
        RootOfUnityParams p = RootOfUnityParams::make(6);
        ThresholdReport r = check_eq_3_2(p, 10'000);
        CHECK(r.holds);
        CHECK(*r.max_residual < 1e-10);
    }
}

TEST_CASE("convolution against (1+e^{2 pi i/m})^Omega (eq. 1.6 pattern)") {
    RootOfUnityParams p = RootOfUnityParams::make(5);
    ThresholdReport r = check_eq_1_6(p, 1000);
    CHECK(r.holds);
    CHECK(*r.max_residual < 1e-10);
}

TEST_CASE("floor-weighted mu_m sums (lemma 3.1 pattern)") {
    SUBCASE("hand values at m=1") {
        RootOfUnityParams p = RootOfUnityParams::make(1);
        ThresholdReport r = check_lemma_3_1(p, {1, 3});
        CHECK(r.holds);
        CHECK(*r.max_residual < 1e-12);
    }
    SUBCASE("m=4 at 1e4") {
        RootOfUnityParams p = RootOfUnityParams::make(4);
        ThresholdReport r = check_lemma_3_1(p, {1, 10, 100, 1000, 10'000});
        CHECK(r.holds);
        CHECK(*r.max_residual < 1e-9);
    }
}

TEST_CASE("Liouville floor sums hit floor(sqrt(x)) exactly") {
    SymbolArrays sym = SymbolArrays::build(100);
    CHECK(liouville_floor_sum(1, sym) == 1);
    CHECK(liouville_floor_sum(10, sym) == 3);

    ThresholdReport r = check_remark_3_1(10'000);
    CHECK(r.holds);
    CHECK(!r.first_violation.has_value());
}

TEST_SUITE_END();
