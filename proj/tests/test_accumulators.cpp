#include <doctest.h>

#include <json.hpp>

#include <cmath>

#include "omegalab/accumulators.hpp"
#include "omegalab/kronecker.hpp"
#include "omegalab/pipeline.hpp"

using namespace omegalab;

TEST_SUITE_BEGIN("accumulators");

static int big_omega_of(u64 n) {
    int om, bo, mo;
    factor_counts_oracle(n, om, bo, mo);
    return bo;
}

TEST_CASE("S(x) hand sequence over [1,6)") {
    ScanConfig sc;
    sc.limit = 5;
    ScanEngine e(sc);
    PrimeTable t = build_prime_table(3);
    const i64 expect[5] = {-1, -2, -1, 0, 1};
    for (u64 n = 1; n <= 5; ++n) {
        e.update_from_block(sieve_block(n, n + 1, t));
        REQUIRE(e.state().s_sum == expect[n - 1]);
        REQUIRE(e.state().x == n);
    }
}

TEST_CASE("table values S(100)=14, S(1000)=54") {
    ScanConfig sc;
    sc.limit = 1000;
    sc.sample_points = {100, 1000};
    ScanEngine e(sc);
    e.run(1);
    CHECK(e.state().s_sum == 54);
    for (const auto& row : e.samples()) {
        if (row.claim == "S" && row.x == 100) CHECK(row.re == 14.0);
        if (row.claim == "S" && row.x == 1000) CHECK(row.re == 54.0);
    }
}

TEST_CASE("sequencing contract") {
    ScanConfig sc;
    sc.limit = 100;
    ScanEngine e(sc);
    PrimeTable t = build_prime_table(10);
    e.update_from_block(sieve_block(1, 11, t));
    CHECK_THROWS_AS(e.update_from_block(sieve_block(12, 20, t)), std::logic_error);  // gap
    CHECK_THROWS_AS(e.update_from_block(sieve_block(5, 20, t)), std::logic_error);   // overlap

    FactorCountBlock empty;
    empty.lo = 11;
    empty.hi = 11;
    e.update_from_block(empty);  // no-op
    CHECK(e.state().x == 10);
}

TEST_CASE("T starts at -1 and satisfies the stated bounds") {
    ScanConfig sc;
    sc.limit = 1000;
    sc.hyp11 = true;
    sc.sample_points = {1, 2, 3};
    ScanEngine e(sc);
    e.run(1);
    double t1 = 0, t2 = 0, t3 = 0;
    for (const auto& row : e.samples()) {
        if (row.claim != "T") continue;
        if (row.x == 1) t1 = row.re;
        if (row.x == 2) t2 = row.re;
        if (row.x == 3) t3 = row.re;
    }
    CHECK(t1 == -1.0);
    CHECK(std::abs(t2 * std::sqrt(2.0) - (-2.1213203435596424)) < 1e-12);
    CHECK(std::abs(t3 * std::sqrt(3.0) - (-2.0207259421636903)) < 1e-12);
    CHECK(e.t_boundary_flags().empty());
    for (const auto& r : e.reports()) CHECK(r.holds);
}

TEST_CASE("state invariants at 1e5") {
    ScanConfig sc;
    sc.limit = 100'000;
    sc.conj12_m = {3, 6};
    ScanEngine e(sc);
    e.run(1);
    const SumState& st = e.state();
    CHECK(st.x == 100'000);
    CHECK(std::llabs(st.s_sum) <= static_cast<i64>(st.x));
    CHECK(((st.s_sum - static_cast<i64>(st.x)) % 2) == 0);
    for (const auto& [m, counts] : st.residue_counts) {
        u64 total = 0;
        for (u64 c : counts) total += c;
        CHECK_MESSAGE(total == st.x, "m=", m);
    }
}

TEST_CASE("parity identity S(x) = -L(x) - 2 L(x/2)") {
    const u64 N = 1'000'000;
    PrimeTable t = build_prime_table(isqrt_u64(N));
    FactorCountBlock b = sieve_block(1, N + 1, t);
    std::vector<i64> L(N + 1, 0);
    for (u64 n = 1; n <= N; ++n)
        L[n] = L[n - 1] + ((b.big_omega[n - 1] & 1) ? -1 : 1);

    std::vector<u64> xs;
    for (u64 i = 1; i <= 1000; ++i) xs.push_back(i * (N / 1000));
    ScanConfig sc;
    sc.limit = N;
    sc.sample_points = xs;
    ScanEngine e(sc);
    e.run(1);
    std::size_t checked = 0;
    for (const auto& row : e.samples()) {
        if (row.claim != "S") continue;
        i64 s = static_cast<i64>(row.re);
        REQUIRE(s == -L[row.x] - 2 * L[row.x / 2]);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("T relation against two Liouville sums") {
    const u64 N = 1'000'000;
    PrimeTable t = build_prime_table(isqrt_u64(N));
    FactorCountBlock b = sieve_block(1, N + 1, t);
    std::vector<u64> xs = {10, 1000, 12345, 100'000, 777'777, 1'000'000};
    ScanConfig sc;
    sc.limit = N;
    sc.sample_points = xs;
    ScanEngine e(sc);
    e.run(1);

    Kahan lam_over_n;
    std::vector<double> prefix(N + 1, 0.0);
    for (u64 n = 1; n <= N; ++n) {
        double term = 1.0 / static_cast<double>(n);
        lam_over_n.add((b.big_omega[n - 1] & 1) ? -term : term);
        prefix[n] = lam_over_n.value();
    }
    for (const auto& row : e.samples()) {
        if (row.claim != "T") continue;
        double rhs = -prefix[row.x / 2] - prefix[row.x];
        REQUIRE(std::abs(row.re - rhs) < 1e-9);
    }
}

TEST_CASE("residue claims: onsets are sharp at small m") {
    ScanConfig sc;
    sc.limit = 100'000;
    sc.conj12_m = {3, 6, 13};
    ScanEngine e(sc);
    e.run(1);
    for (const auto& o : e.residue_outcomes()) {
        if (o.m == 3) {
            CHECK(o.checkable);
            CHECK(o.holds);
            CHECK(o.boundary_seen);
            CHECK(o.boundary_fails);  // fails at x = 61
        }
        if (o.m == 6) {
            CHECK(o.onset == 14);
            CHECK(o.holds);
            CHECK(o.boundary_seen);
            CHECK(o.boundary_fails);  // fails at x = 13
        }
        if (o.m == 13) {
            CHECK(!o.checkable);  // s(13) = 6943303 > 1e5
            CHECK(o.holds);
        }
    }
    CHECK_THROWS_AS(ScanEngine(ScanConfig{.conj12_m = {19}}), std::invalid_argument);
}

TEST_CASE("residue claim m=6 by direct count near the onset") {
    // 6 | (n - Omega(n)): count(13) = 2 (fails 6*2 > 13), count(14) = 3 (holds)
    u64 count = 0;
    for (u64 n = 1; n <= 14; ++n) {
        if ((n - big_omega_of(n)) % 6 == 0) ++count;
        if (n == 13) CHECK(!(6 * count > 13));
        if (n == 14) CHECK(6 * count > 14);
    }
    CHECK(count == 3);
}

TEST_CASE("character sign claims at small scale") {
    ScanConfig sc;
    sc.limit = 100'000;
    sc.conj13_d = ScanConfig::default_conj13_d();
    ScanEngine e(sc);
    e.run(1);
    for (const auto& o : e.char_outcomes()) {
        if (o.d == -8) {
            // With the standard Kronecker symbol, S_{-8} touches 0 at x=3
            // ((-8/3) = +1, Omega(3) = 1). Cross-checked against an
            // independent scan; the stated all-x claim does not survive it.
            CHECK(!o.holds);
            CHECK(o.first_violation.has_value());
            CHECK(*o.first_violation == 3);
            continue;
        }
        CHECK_MESSAGE(o.holds, "d=", o.d);
        if (o.d == 5) {
            CHECK(o.boundary_seen);
            CHECK(o.boundary_value == 0);  // S_5(10) = 0, not > 0
        }
        if (o.d == -4) CHECK(!o.boundary_seen);  // threshold 1 has no predecessor
    }
}

TEST_CASE("later zero-touches of the twisted sums, pinned") {
    // Deeper scans find S_d returning to zero after the stated onsets; the
    // first such x is pinned here after confirmation by trial division and an
    // independent SPF-sieve recomputation.
    ScanConfig sc;
    sc.limit = 8'800'000;
    sc.conj13_d = {-11, 24, 28};
    ScanEngine e(sc);
    e.run(1);
    for (const auto& o : e.char_outcomes()) {
        CHECK(!o.holds);
        if (o.d == -11) CHECK(*o.first_violation == 3'349'673);
        if (o.d == 24) CHECK(*o.first_violation == 8'797'853);
        if (o.d == 28) CHECK(*o.first_violation == 3'120'515);
    }
}

TEST_CASE("the d=-8 sign data matches the +8 character instead") {
    const u64 N = 100'000;
    PrimeTable t = build_prime_table(isqrt_u64(N));
    FactorCountBlock b = sieve_block(1, N + 1, t);
    i64 s = 0;
    for (u64 n = 1; n <= N; ++n) {
        int chi = kronecker(8, n);
        if (chi) {
            int sign = ((n ^ b.big_omega[n - 1]) & 1) ? -1 : 1;
            s += sign * chi;
        }
        REQUIRE(s < 0);
    }
}

TEST_CASE("pow2 accumulator hand values and window") {
    ScanConfig sc;
    sc.limit = 100'000;
    sc.conj11 = true;
    ScanEngine e(sc);
    PrimeTable t = build_prime_table(isqrt_u64(100'000));
    e.update_from_block(sieve_block(1, 9, t));
    CHECK(e.state().pow2_sum == -7);  // terms 1,-2,-2,4,-2,4,-2,-8
    ScanEngine full(sc);
    full.run(1);
    for (const auto& r : full.reports())
        if (r.claim_id == "conj11.pow2") CHECK(r.holds);
}

TEST_CASE("extrema against brute force at limit 400") {
    ScanConfig sc;
    sc.limit = 400;
    sc.extrema = true;
    ScanEngine e(sc);
    e.run(1);

    i64 s = 0;
    double best_max = -1e300, best_min = 1e300;
    u64 bx = 0, nx = 0;
    i64 bs = 0, ns = 0;
    for (u64 n = 1; n <= 400; ++n) {
        int bo = big_omega_of(n);
        s += ((n ^ static_cast<u64>(bo)) & 1) ? -1 : 1;
        double ratio = static_cast<double>(s) / std::sqrt(static_cast<double>(n));
        if (ratio > best_max) {
            best_max = ratio;
            bx = n;
            bs = s;
        }
        if (n >= 325 && ratio < best_min) {
            best_min = ratio;
            nx = n;
            ns = s;
        }
    }
    auto ex = e.extrema();
    CHECK(ex.max_x == bx);
    CHECK(ex.max_s == bs);
    CHECK(ex.max_ratio == doctest::Approx(best_max).epsilon(1e-12));
    CHECK(ex.min_x == nx);
    CHECK(ex.min_s == ns);
    CHECK(ex.min_ratio == doctest::Approx(best_min).epsilon(1e-12));
}

TEST_CASE("V series: harmonic at m=2, one at n=1, decay for m=1 star") {
    {
        ScanConfig sc;
        sc.limit = 100;
        sc.vseries_m = {2};
        sc.sample_points = {10, 100};
        ScanEngine e(sc);
        e.run(1);
        Kahan h;
        double h10 = 0, h100 = 0;
        for (u64 n = 1; n <= 100; ++n) {
            h.add(1.0 / static_cast<double>(n));
            if (n == 10) h10 = h.value();
            if (n == 100) h100 = h.value();
        }
        for (const auto& row : e.samples()) {
            if (row.claim == "V(2)" && row.x == 10) CHECK(row.re == doctest::Approx(h10).epsilon(1e-14));
            if (row.claim == "V(2)" && row.x == 100)
                CHECK(row.re == doctest::Approx(h100).epsilon(1e-14));
            if (row.claim == "V(2)") CHECK(std::abs(row.im) < 1e-15);
        }
    }
    {
        ScanConfig sc;
        sc.limit = 1;
        sc.vseries_m = {7};
        sc.sample_points = {1};
        ScanEngine e(sc);
        e.run(1);
        bool seen = false;
        for (const auto& row : e.samples())
            if (row.claim == "V(7)" && row.x == 1) {
                CHECK(row.re == 1.0);
                CHECK(row.im == 0.0);
                seen = true;
            }
        CHECK(seen);
    }
    {
        ScanConfig sc;
        sc.limit = 1'000'000;
        sc.vseries_m = {1};
        sc.sample_points = {1000, 1'000'000};
        ScanEngine e(sc);
        e.run(1);
        double v1k = 0, v1m = 0;
        for (const auto& row : e.samples()) {
            if (row.claim == "Vstar(1)" && row.x == 1000) v1k = std::abs(row.re);
            if (row.claim == "Vstar(1)" && row.x == 1'000'000) v1m = std::abs(row.re);
        }
        CHECK(v1m < v1k);  // partial sums of lambda(n)/n shrink toward zero
        // sf_v1 tracks the squarefree (m=1) series: sum mu(n)/n
        CHECK(std::abs(e.state().sf_v1.value()) < 0.01);
    }
}

static ScanConfig rich_config() {
    ScanConfig sc;
    sc.limit = 200'000;
    sc.block_size = 4096;
    sc.hyp11 = true;
    sc.conj11 = true;
    sc.conj12_m = {3, 6};
    sc.conj13_d = {-4, 5};
    sc.vseries_m = {1, 5};
    sc.sample_points = {10, 100, 1000, 10'000, 100'000, 200'000};
    return sc;
}

TEST_CASE("checkpoint round trip is bit-exact") {
    ScanConfig sc = rich_config();
    ScanEngine e(sc);
    e.run(1);
    std::string j1 = e.checkpoint_json();
    ScanEngine loaded = ScanEngine::load_checkpoint_json(j1, sc);
    CHECK(loaded.checkpoint_json() == j1);
    CHECK(loaded.state().s_sum == e.state().s_sum);
    CHECK(loaded.state().t_sum.sum == e.state().t_sum.sum);
    CHECK(loaded.state().t_sum.comp == e.state().t_sum.comp);
}

TEST_CASE("resumed run equals uninterrupted run bit-exactly") {
    ScanConfig sc = rich_config();
    ScanEngine full(sc);
    full.run(1);

    ScanEngine partial(sc);
    PrimeTable t = build_prime_table(isqrt_u64(sc.limit));
    BlockSiever siever(t);
    FactorCountBlock blk;
    for (u64 lo = 1; lo + sc.block_size <= 98'305; lo += sc.block_size) {
        siever.sieve(lo, lo + sc.block_size, blk);
        partial.update_from_block(blk);
    }
    std::string mid = partial.checkpoint_json();
    ScanEngine resumed = ScanEngine::load_checkpoint_json(mid, sc);
    resumed.run(1);
    CHECK(resumed.checkpoint_json() == full.checkpoint_json());
    CHECK(samples_to_csv(resumed.samples()) == samples_to_csv(full.samples()));
}

TEST_CASE("checkpoint rejects corruption, tampering, and config drift") {
    ScanConfig sc = rich_config();
    sc.limit = 20'000;
    ScanEngine e(sc);
    e.run(1);
    std::string good = e.checkpoint_json();

    CHECK_THROWS_WITH_AS(ScanEngine::load_checkpoint_json(good.substr(0, 40), sc),
                         doctest::Contains("corrupt"), std::runtime_error);

    {
        nlohmann::json j = nlohmann::json::parse(good);
        j["s_sum"] = "12345";  // tamper without re-hashing
        CHECK_THROWS_WITH_AS(ScanEngine::load_checkpoint_json(j.dump(), sc),
                             doctest::Contains("hash mismatch"), std::runtime_error);
    }
    {
        nlohmann::json j = nlohmann::json::parse(good);
        j["version"] = 2;
        CHECK_THROWS_WITH_AS(ScanEngine::load_checkpoint_json(j.dump(), sc),
                             doctest::Contains("version"), std::runtime_error);
    }
    {
        ScanConfig other = sc;
        other.conj12_m = {3};  // claim set differs
        CHECK_THROWS_WITH_AS(ScanEngine::load_checkpoint_json(good, other),
                             doctest::Contains("claim set"), std::runtime_error);
    }
    {
        ScanConfig other = sc;
        other.block_size = 8192;
        CHECK_THROWS_WITH_AS(ScanEngine::load_checkpoint_json(good, other),
                             doctest::Contains("block_size"), std::runtime_error);
    }
}

TEST_CASE("worker count does not change any byte of the results") {
    ScanConfig sc = rich_config();
    ScanEngine a(sc), b(sc);
    a.run(1);
    b.run(3);
    CHECK(a.checkpoint_json() == b.checkpoint_json());
    CHECK(samples_to_csv(a.samples()) == samples_to_csv(b.samples()));
}

TEST_SUITE_END();
