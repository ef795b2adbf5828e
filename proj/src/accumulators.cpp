#include "omegalab/accumulators.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>

#include "omegalab/kronecker.hpp"
#include "omegalab/pipeline.hpp"

namespace omegalab {

using nlohmann::json;

namespace thresholds {

const std::map<int, u64>& residue_onset() {
    static const std::map<int, u64> table = {
        {3, 62},      {4, 1793193}, {5, 187},     {6, 14},   {7, 6044},
        {8, 73},      {9, 65},      {10, 61},     {11, 4040389}, {12, 14},
        {13, 6943303}, {14, 4174},  {15, 77},     {16, 99},  {17, 50147927},
        {18, 73},     {20, 61}};
    return table;
}

const std::vector<CharClaim>& char_claims() {
    static const std::vector<CharClaim> table = {
        {-4, true, 1},      {-7, true, 1},       {-8, true, 1},    {5, false, 11},
        {-3, false, 406759}, {-11, false, 771862}, {24, true, 90601}, {28, true, 629819}};
    return table;
}

static const CharClaim& char_claim_for(int d) {
    for (const auto& c : char_claims())
        if (c.d == d) return c;
    throw std::invalid_argument("no sign claim for d=" + std::to_string(d));
}

}  // namespace thresholds

std::vector<int> ScanConfig::default_conj12_m() {
    std::vector<int> ms;
    for (int m = 3; m <= 18; ++m) ms.push_back(m);  // m = 19 has no onset
    ms.push_back(20);
    return ms;
}

std::vector<int> ScanConfig::default_conj13_d() {
    std::vector<int> ds;
    for (const auto& c : thresholds::char_claims()) ds.push_back(c.d);
    return ds;
}

static void sort_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

ScanEngine::ScanEngine(ScanConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.limit < 1) throw std::invalid_argument("ScanEngine: limit >= 1");
    if (cfg_.block_size < 1) throw std::invalid_argument("ScanEngine: block_size >= 1");
    sort_unique(cfg_.conj12_m);
    sort_unique(cfg_.conj13_d);
    sort_unique(cfg_.vseries_m);
    std::sort(cfg_.sample_points.begin(), cfg_.sample_points.end());
    cfg_.sample_points.erase(std::unique(cfg_.sample_points.begin(), cfg_.sample_points.end()),
                             cfg_.sample_points.end());

    for (int m : cfg_.conj12_m) {
        if (!thresholds::residue_onset().count(m))
            throw std::invalid_argument("residue claim has no onset for m=" + std::to_string(m));
        st_.residue_counts[m] = std::vector<u64>(static_cast<std::size_t>(m), 0);
        residue_checks_[m] = {};
    }
    for (int d : cfg_.conj13_d) {
        (void)thresholds::char_claim_for(d);
        char_tables_[d] = kronecker_period_table(d);
        st_.char_sums[d] = 0;
        char_checks_[d] = {};
    }
    for (int m : cfg_.vseries_m) {
        vparams_.emplace(m, RootOfUnityParams::make(m));
        st_.v_sums[m] = {};
        st_.m_sums[m] = {};
    }
}

u64 ScanEngine::residue_cap(int m) const {
    auto it = cfg_.conj12_cap.find(m);
    u64 cap = (it == cfg_.conj12_cap.end() || it->second == 0) ? cfg_.limit : it->second;
    return std::min(cap, cfg_.limit);
}

std::vector<std::string> ScanEngine::claim_ids() const {
    std::vector<std::string> ids = {"S", "T"};
    if (cfg_.hyp11) ids.push_back("hyp11");
    if (cfg_.extrema) ids.push_back("extrema");
    if (cfg_.conj11) ids.push_back("conj11");
    for (int m : cfg_.conj12_m) ids.push_back("conj12:" + std::to_string(m));
    for (int d : cfg_.conj13_d) ids.push_back("conj13:" + std::to_string(d));
    for (int m : cfg_.vseries_m) ids.push_back("vseries:" + std::to_string(m));
    if (!cfg_.vseries_m.empty()) ids.push_back("sfmu");
    return ids;
}

// is a/sqrt(xa) > b/sqrt(xb), exact
static bool ratio_greater(i64 sa, u64 xa, i64 sb, u64 xb) {
    if (sa >= 0 && sb < 0) return true;
    if (sa < 0 && sb >= 0) return false;
    i128 lhs = static_cast<i128>(sa) * sa * static_cast<i128>(xb);
    i128 rhs = static_cast<i128>(sb) * sb * static_cast<i128>(xa);
    return (sa >= 0) ? lhs > rhs : lhs < rhs;
}

void ScanEngine::update_from_block(const FactorCountBlock& b) {
    if (b.lo != st_.x + 1)
        throw std::logic_error("sequencing error: expected block starting at " +
                               std::to_string(st_.x + 1) + ", got " + std::to_string(b.lo));
    if (b.hi < b.lo) throw std::invalid_argument("bad block range");
    if (b.hi == b.lo) return;

    std::vector<u64> xs;
    {
        auto it = std::lower_bound(cfg_.sample_points.begin(), cfg_.sample_points.end(), b.lo);
        for (; it != cfg_.sample_points.end() && *it < b.hi; ++it) xs.push_back(*it);
    }

    parity_pass(b, xs);
    if (cfg_.conj11) pow2_pass(b, xs);
    for (int m : cfg_.conj12_m) residue_pass(m, b);
    for (int d : cfg_.conj13_d) char_pass(d, b, xs);
    if (!cfg_.vseries_m.empty()) vseries_pass(b, xs);

    st_.x = b.hi - 1;
}

void ScanEngine::parity_pass(const FactorCountBlock& b, const std::vector<u64>& xs) {
    const u8* bo = b.big_omega.data();
    const u64 lo = b.lo;
    const std::size_t len = b.size();
    const bool checks = cfg_.hyp11;
    const bool ext = cfg_.extrema;
    const u64 limit = cfg_.limit;

    i64 s = st_.s_sum;
    Kahan t = st_.t_sum;
    std::size_t si = 0;

    for (std::size_t i = 0; i < len; ++i) {
        const u64 n = lo + i;
        const int sign = ((n ^ bo[i]) & 1u) ? -1 : 1;
        s += sign;
        t.add(sign < 0 ? -1.0 / static_cast<double>(n) : 1.0 / static_cast<double>(n));

        if (checks && n <= limit) {
            if (n >= thresholds::kSPositiveFrom && s <= 0 && !parity_.s_pos_viol)
                parity_.s_pos_viol = n;
            if (n >= thresholds::kSSqrtFrom && !parity_.s_sqrt_viol &&
                !(s > 0 && static_cast<i128>(s) * s > static_cast<i128>(n)))
                parity_.s_sqrt_viol = n;
            if (!parity_.s_cap_viol && s >= 0 &&
                !(static_cast<i128>(100) * s * s < static_cast<i128>(529) * n))
                parity_.s_cap_viol = n;

            const double tv = t.value();
            if (!(tv < 0.0) && !parity_.t_neg_viol) parity_.t_neg_viol = n;
            if (n >= 2) {
                const double tr = tv * std::sqrt(static_cast<double>(n));
                if (!(tr < -1.0) && !parity_.t_lo_viol) parity_.t_lo_viol = n;
                if (n >= 3 && !(tr > -2.3) && !parity_.t_hi_viol) parity_.t_hi_viol = n;
                if (parity_.t_flags.size() < 1024 &&
                    (std::abs(tr + 1.0) < 1e-9 || (n >= 3 && std::abs(tr + 2.3) < 1e-9)))
                    parity_.t_flags.push_back(n);
            }
        }

        if (ext) {
            if (!parity_.have_max || (sign > 0 && ratio_greater(s, n, parity_.max_s, parity_.max_x))) {
                parity_.have_max = true;
                parity_.max_x = n;
                parity_.max_s = s;
            }
            if (n >= 325 &&
                (!parity_.have_min ||
                 (sign < 0 && ratio_greater(parity_.min_s, parity_.min_x, s, n)))) {
                parity_.have_min = true;
                parity_.min_x = n;
                parity_.min_s = s;
            }
        }

        if (si < xs.size() && n == xs[si]) {
            samples_.push_back({n, "S", static_cast<double>(s), 0.0});
            samples_.push_back({n, "T", t.value(), 0.0});
            ++si;
        }
    }
    st_.s_sum = s;
    st_.t_sum = t;
}

void ScanEngine::pow2_pass(const FactorCountBlock& b, const std::vector<u64>& xs) {
    const u8* bo = b.big_omega.data();
    const u64 lo = b.lo;
    const std::size_t len = b.size();
    const u64 limit = cfg_.limit;
    i64 sum = st_.pow2_sum;
    std::size_t si = 0;

    for (std::size_t i = 0; i < len; ++i) {
        const u64 n = lo + i;
        const int e = bo[i];
        if (e >= 62) throw std::overflow_error("pow2 accumulator: 2^Omega(n) out of i64 range");
        i64 term = static_cast<i64>(1) << e;
        if (e & 1) term = -term;
        if (__builtin_add_overflow(sum, term, &sum))
            throw std::overflow_error("pow2 accumulator overflow at n=" + std::to_string(n));
        if (n >= thresholds::kPow2From && n <= limit && !pow2_.first_violation &&
            !(sum < static_cast<i64>(n) && -sum < static_cast<i64>(n)))
            pow2_.first_violation = n;
        if (si < xs.size() && n == xs[si]) {
            samples_.push_back({n, "pow2", static_cast<double>(sum), 0.0});
            ++si;
        }
    }
    st_.pow2_sum = sum;
}

void ScanEngine::residue_pass(int m, const FactorCountBlock& b) {
    const u8* bo = b.big_omega.data();
    const u64 lo = b.lo;
    const std::size_t len = b.size();
    auto& counts = st_.residue_counts[m];
    auto& chk = residue_checks_[m];
    const u64 onset = thresholds::residue_onset().at(m);
    const u64 cap = residue_cap(m);
    const bool want_less = (m == 4);
    const u64 um = static_cast<u64>(m);

    u8 modtab[RootOfUnityParams::kMaxExponent + 1];
    for (int k = 0; k <= RootOfUnityParams::kMaxExponent; ++k)
        modtab[k] = static_cast<u8>(k % m);

    u32 r = static_cast<u32>(lo % um);
    for (std::size_t i = 0; i < len; ++i) {
        int q = static_cast<int>(r) - static_cast<int>(modtab[bo[i]]);
        if (q < 0) q += m;
        ++counts[static_cast<std::size_t>(q)];

        const u64 n = lo + i;
        if (n + 1 == onset) {
            chk.boundary_seen = true;
            chk.boundary_count = counts[0];
            bool ok = want_less ? (4 * counts[0] < n) : (um * counts[0] > n);
            chk.boundary_fails = !ok;
        }
        if (n >= onset && n <= cap && !chk.first_violation) {
            bool ok = want_less ? (4 * counts[0] < n) : (um * counts[0] > n);
            if (!ok) chk.first_violation = n;
        }
        ++r;
        if (r == um) r = 0;
    }
}

void ScanEngine::char_pass(int d, const FactorCountBlock& b, const std::vector<u64>& xs) {
    const u8* bo = b.big_omega.data();
    const u64 lo = b.lo;
    const std::size_t len = b.size();
    const auto& table = char_tables_[d];
    auto& chk = char_checks_[d];
    const auto& claim = thresholds::char_claim_for(d);
    const u64 limit = cfg_.limit;
    const u32 period = static_cast<u32>(table.size());
    const std::string claim_name = "Sd(" + std::to_string(d) + ")";

    u32 r = static_cast<u32>(lo % period);
    i64 sum = st_.char_sums[d];
    std::size_t si = 0;

    for (std::size_t i = 0; i < len; ++i) {
        const u64 n = lo + i;
        const i8 chi = table[r];
        if (chi != 0) {
            const bool odd = ((n ^ bo[i]) & 1u) != 0;
            sum += odd ? -static_cast<i64>(chi) : static_cast<i64>(chi);
        }
        if (n + 1 == claim.threshold) {
            chk.boundary_seen = true;
            chk.boundary_value = sum;
        }
        if (n >= claim.threshold && n <= limit && !chk.first_violation) {
            bool ok = claim.negative ? (sum < 0) : (sum > 0);
            if (!ok) chk.first_violation = n;
        }
        if (si < xs.size() && n == xs[si]) {
            samples_.push_back({n, claim_name, static_cast<double>(sum), 0.0});
            ++si;
        }
        ++r;
        if (r == period) r = 0;
    }
    st_.char_sums[d] = sum;
}

void ScanEngine::vseries_pass(const FactorCountBlock& b, const std::vector<u64>& xs) {
    const u8* om = b.omega.data();
    const u8* bo = b.big_omega.data();
    const i8* mu = b.mobius.data();
    const u64 lo = b.lo;
    const std::size_t len = b.size();

    constexpr std::size_t kChunk = 16384;
    static thread_local std::vector<double> inv;
    inv.resize(std::min(kChunk, len));

    std::size_t si_sf = 0;
    for (std::size_t base = 0; base < len; base += kChunk) {
        const std::size_t cnt = std::min(kChunk, len - base);
        // 1/n computed once per n, shared by every series below
        for (std::size_t i = 0; i < cnt; ++i)
            inv[i] = 1.0 / static_cast<double>(lo + base + i);

        {
            Kahan sf = st_.sf_v1;
            std::size_t si = si_sf;
            for (std::size_t i = 0; i < cnt; ++i) {
                const i8 mo = mu[base + i];
                if (mo != 0) sf.add(mo < 0 ? -inv[i] : inv[i]);
                if (si < xs.size() && lo + base + i == xs[si]) {
                    samples_.push_back({xs[si], "sfmu", sf.value(), 0.0});
                    ++si;
                }
            }
            st_.sf_v1 = sf;
            si_sf = si;
        }

        for (auto& [m, params] : vparams_) {
            auto& vp = st_.v_sums[m];
            auto& msum = st_.m_sums[m];
            KahanComplex v = vp.v, vs = vp.vstar, mm = msum;
            const cplx* zp = params.z_pow.data();
            const std::string ms = std::to_string(m);
            std::size_t si = 0;
            while (si < xs.size() && xs[si] < lo + base) ++si;
            for (std::size_t i = 0; i < cnt; ++i) {
                const double in = inv[i];
                const cplx vw = zp[om[base + i]] * in;
                v.add(vw);
                vs.add(zp[bo[base + i]] * in);
                if (mu[base + i] != 0) mm.add(vw);
                if (si < xs.size() && lo + base + i == xs[si]) {
                    samples_.push_back({xs[si], "V(" + ms + ")", v.value().real(), v.value().imag()});
                    samples_.push_back(
                        {xs[si], "Vstar(" + ms + ")", vs.value().real(), vs.value().imag()});
                    samples_.push_back({xs[si], "M(" + ms + ")", mm.value().real(), mm.value().imag()});
                    ++si;
                }
            }
            vp.v = v;
            vp.vstar = vs;
            msum = mm;
        }
    }
}

ScanEngine::Extrema ScanEngine::extrema() const {
    Extrema e;
    if (parity_.have_max) {
        e.max_x = parity_.max_x;
        e.max_s = parity_.max_s;
        e.max_ratio = static_cast<double>(parity_.max_s) / std::sqrt(static_cast<double>(parity_.max_x));
    }
    if (parity_.have_min) {
        e.min_x = parity_.min_x;
        e.min_s = parity_.min_s;
        e.min_ratio = static_cast<double>(parity_.min_s) / std::sqrt(static_cast<double>(parity_.min_x));
    }
    return e;
}

std::vector<ScanEngine::ResidueOutcome> ScanEngine::residue_outcomes() const {
    std::vector<ResidueOutcome> out;
    for (int m : cfg_.conj12_m) {
        const auto& chk = residue_checks_.at(m);
        ResidueOutcome o;
        o.m = m;
        o.onset = thresholds::residue_onset().at(m);
        o.cap = residue_cap(m);
        o.checkable = o.onset <= o.cap;
        o.first_violation = chk.first_violation;
        o.holds = !chk.first_violation.has_value();
        o.boundary_seen = chk.boundary_seen;
        o.boundary_fails = chk.boundary_fails;
        o.boundary_count = chk.boundary_count;
        out.push_back(o);
    }
    return out;
}

std::vector<ScanEngine::CharOutcome> ScanEngine::char_outcomes() const {
    std::vector<CharOutcome> out;
    for (int d : cfg_.conj13_d) {
        const auto& chk = char_checks_.at(d);
        const auto& claim = thresholds::char_claim_for(d);
        CharOutcome o;
        o.d = d;
        o.threshold = claim.threshold;
        o.negative = claim.negative;
        o.first_violation = chk.first_violation;
        o.holds = !chk.first_violation.has_value();
        o.boundary_seen = chk.boundary_seen;
        o.boundary_value = chk.boundary_value;
        out.push_back(o);
    }
    return out;
}

std::vector<ThresholdReport> ScanEngine::reports() const {
    std::vector<ThresholdReport> reps;
    const u64 limit = std::min(cfg_.limit, st_.x);

    auto make = [&](const std::string& id, u64 lo, u64 hi, std::optional<u64> viol) {
        ThresholdReport r;
        r.claim_id = id;
        r.range_lo = lo;
        r.range_hi = hi;
        r.first_violation = viol;
        r.holds = !viol.has_value();
        return r;
    };

    if (cfg_.hyp11) {
        reps.push_back(make("hyp11.S_positive", thresholds::kSPositiveFrom, limit, parity_.s_pos_viol));
        reps.push_back(make("hyp11.S_gt_sqrtx", thresholds::kSSqrtFrom, limit, parity_.s_sqrt_viol));
        reps.push_back(make("hyp11.S_lt_2.3sqrtx", 1, limit, parity_.s_cap_viol));
        std::optional<u64> tviol = parity_.t_neg_viol;
        for (auto v : {parity_.t_lo_viol, parity_.t_hi_viol})
            if (v && (!tviol || *v < *tviol)) tviol = v;
        reps.push_back(make("hyp11.T_bounds", 1, limit, tviol));
    }
    if (cfg_.extrema) {
        ThresholdReport r;
        r.claim_id = "extrema.ratio";
        r.range_lo = 1;
        r.range_hi = limit;
        r.holds = parity_.have_max && parity_.have_min;
        Extrema e = extrema();
        r.witness_extrema = {{e.max_x, e.max_ratio}, {e.min_x, e.min_ratio}};
        reps.push_back(r);
    }
    if (cfg_.conj11)
        reps.push_back(make("conj11.pow2", thresholds::kPow2From, limit, pow2_.first_violation));
    for (const auto& o : residue_outcomes()) {
        ThresholdReport r = make("conj12.m=" + std::to_string(o.m), o.onset,
                                 std::min(o.cap, limit), o.first_violation);
        if (o.boundary_seen)
            r.witness_extrema = {{o.onset - 1, static_cast<double>(o.boundary_count)}};
        reps.push_back(r);
    }
    for (const auto& o : char_outcomes()) {
        ThresholdReport r =
            make("conj13.d=" + std::to_string(o.d), o.threshold, limit, o.first_violation);
        if (o.boundary_seen)
            r.witness_extrema = {{o.threshold - 1, static_cast<double>(o.boundary_value)}};
        reps.push_back(r);
    }
    return reps;
}

void ScanEngine::run(unsigned threads, const std::string& checkpoint_path,
                     u64 checkpoint_every_blocks, bool quiet) {
    if (st_.x >= cfg_.limit) {
        if (!checkpoint_path.empty()) save_checkpoint(checkpoint_path);
        return;
    }
    PrimeTable primes = build_prime_table(std::max<u64>(2, isqrt_u64(cfg_.limit)));
    u64 blocks_done = 0;
    u64 next_progress = (st_.x / 10'000'000 + 1) * 10'000'000;
    auto t0 = std::chrono::steady_clock::now();

    run_blocks(primes, st_.x + 1, cfg_.limit, cfg_.block_size, threads,
               [&](const FactorCountBlock& blk) {
                   update_from_block(blk);
                   ++blocks_done;
                   if (!checkpoint_path.empty() && checkpoint_every_blocks > 0 &&
                       blocks_done % checkpoint_every_blocks == 0)
                       save_checkpoint(checkpoint_path);
                   if (!quiet && st_.x >= next_progress) {
                       double secs = std::chrono::duration<double>(
                                         std::chrono::steady_clock::now() - t0)
                                         .count();
                       std::fprintf(stderr, "  x=%llu  (%.2fM/s)\n",
                                    static_cast<unsigned long long>(st_.x),
                                    secs > 0 ? static_cast<double>(st_.x) / secs / 1e6 : 0.0);
                       while (next_progress <= st_.x) next_progress += 10'000'000;
                   }
               });
    if (!checkpoint_path.empty()) save_checkpoint(checkpoint_path);
}

// ---------------------------------------------------------------------------
// checkpointing
// ---------------------------------------------------------------------------

static json kahan_to_json(const Kahan& k) {
    return json::array({double_to_hex(k.sum), double_to_hex(k.comp)});
}

static Kahan kahan_from_json(const json& j) {
    Kahan k;
    k.sum = hex_to_double(j.at(0).get<std::string>());
    k.comp = hex_to_double(j.at(1).get<std::string>());
    return k;
}

static json kc_to_json(const KahanComplex& k) {
    return json::array({double_to_hex(k.re.sum), double_to_hex(k.re.comp),
                        double_to_hex(k.im.sum), double_to_hex(k.im.comp)});
}

static KahanComplex kc_from_json(const json& j) {
    KahanComplex k;
    k.re.sum = hex_to_double(j.at(0).get<std::string>());
    k.re.comp = hex_to_double(j.at(1).get<std::string>());
    k.im.sum = hex_to_double(j.at(2).get<std::string>());
    k.im.comp = hex_to_double(j.at(3).get<std::string>());
    return k;
}

static json opt_to_json(const std::optional<u64>& v) {
    if (!v) return nullptr;
    return std::to_string(*v);
}

static std::optional<u64> opt_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return parse_scaled_u64(j.get<std::string>());
}

static i64 i64_from_json(const json& j) {
    return static_cast<i64>(std::stoll(j.get<std::string>()));
}

std::string ScanEngine::checkpoint_json() const {
    json j;
    j["version"] = 1;
    j["claims"] = claim_ids();
    j["block_size"] = std::to_string(cfg_.block_size);
    j["x"] = std::to_string(st_.x);
    j["s_sum"] = std::to_string(st_.s_sum);
    j["t_sum"] = kahan_to_json(st_.t_sum);
    j["pow2_sum"] = std::to_string(st_.pow2_sum);
    j["sf_v1"] = kahan_to_json(st_.sf_v1);

    json chars = json::object();
    for (const auto& [d, v] : st_.char_sums) chars[std::to_string(d)] = std::to_string(v);
    j["char_sums"] = chars;

    json rc = json::object();
    for (const auto& [m, counts] : st_.residue_counts) {
        json arr = json::array();
        for (u64 c : counts) arr.push_back(std::to_string(c));
        rc[std::to_string(m)] = arr;
    }
    j["residue_counts"] = rc;

    json vs = json::object();
    for (const auto& [m, vp] : st_.v_sums)
        vs[std::to_string(m)] = json{{"v", kc_to_json(vp.v)}, {"vstar", kc_to_json(vp.vstar)}};
    j["v_sums"] = vs;

    json msums = json::object();
    for (const auto& [m, k] : st_.m_sums) msums[std::to_string(m)] = kc_to_json(k);
    j["m_sums"] = msums;

    json checks = json::object();
    {
        json p;
        p["s_pos"] = opt_to_json(parity_.s_pos_viol);
        p["s_sqrt"] = opt_to_json(parity_.s_sqrt_viol);
        p["s_cap"] = opt_to_json(parity_.s_cap_viol);
        p["t_neg"] = opt_to_json(parity_.t_neg_viol);
        p["t_lo"] = opt_to_json(parity_.t_lo_viol);
        p["t_hi"] = opt_to_json(parity_.t_hi_viol);
        json flags = json::array();
        for (u64 f : parity_.t_flags) flags.push_back(std::to_string(f));
        p["t_flags"] = flags;
        p["max"] = parity_.have_max
                       ? json::array({std::to_string(parity_.max_x), std::to_string(parity_.max_s)})
                       : json(nullptr);
        p["min"] = parity_.have_min
                       ? json::array({std::to_string(parity_.min_x), std::to_string(parity_.min_s)})
                       : json(nullptr);
        checks["parity"] = p;
    }
    if (cfg_.conj11) checks["pow2"] = json{{"first_violation", opt_to_json(pow2_.first_violation)}};
    for (const auto& [m, chk] : residue_checks_) {
        checks["conj12:" + std::to_string(m)] =
            json{{"first_violation", opt_to_json(chk.first_violation)},
                 {"boundary_seen", chk.boundary_seen},
                 {"boundary_fails", chk.boundary_fails},
                 {"boundary_count", std::to_string(chk.boundary_count)}};
    }
    for (const auto& [d, chk] : char_checks_) {
        checks["conj13:" + std::to_string(d)] =
            json{{"first_violation", opt_to_json(chk.first_violation)},
                 {"boundary_seen", chk.boundary_seen},
                 {"boundary_value", std::to_string(chk.boundary_value)}};
    }
    j["checks"] = checks;

    json rows = json::array();
    for (const auto& r : samples_)
        rows.push_back(json::array(
            {std::to_string(r.x), r.claim, double_to_hex(r.re), double_to_hex(r.im)}));
    j["samples"] = rows;

    j["hash"] = sha256_hex(j.dump());
    return j.dump();
}

void ScanEngine::save_checkpoint(const std::string& path) const {
    write_text_file(path, checkpoint_json());
}

ScanEngine ScanEngine::load_checkpoint_json(const std::string& text, const ScanConfig& cfg) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("checkpoint load-error: corrupt JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("version"))
        throw std::runtime_error("checkpoint load-error: not a checkpoint file");
    if (j["version"] != 1)
        throw std::runtime_error("checkpoint load-error: version mismatch (expected 1, got " +
                                 j["version"].dump() + ")");
    if (!j.contains("hash")) throw std::runtime_error("checkpoint load-error: missing hash");
    std::string stored_hash = j["hash"].get<std::string>();
    j.erase("hash");
    if (sha256_hex(j.dump()) != stored_hash)
        throw std::runtime_error("checkpoint load-error: hash mismatch");

    ScanEngine e(cfg);
    if (j["claims"].get<std::vector<std::string>>() != e.claim_ids())
        throw std::runtime_error("checkpoint load-error: claim set differs from configuration");
    if (parse_scaled_u64(j["block_size"].get<std::string>()) != cfg.block_size)
        throw std::runtime_error("checkpoint load-error: block_size differs from configuration");

    e.st_.x = parse_scaled_u64(j["x"].get<std::string>());
    e.st_.s_sum = i64_from_json(j["s_sum"]);
    e.st_.t_sum = kahan_from_json(j["t_sum"]);
    e.st_.pow2_sum = i64_from_json(j["pow2_sum"]);
    e.st_.sf_v1 = kahan_from_json(j["sf_v1"]);
    for (auto& [key, val] : j["char_sums"].items()) e.st_.char_sums[std::stoi(key)] = i64_from_json(val);
    for (auto& [key, val] : j["residue_counts"].items()) {
        auto& counts = e.st_.residue_counts[std::stoi(key)];
        counts.clear();
        for (const auto& c : val) counts.push_back(parse_scaled_u64(c.get<std::string>()));
    }
    for (auto& [key, val] : j["v_sums"].items()) {
        auto& vp = e.st_.v_sums[std::stoi(key)];
        vp.v = kc_from_json(val.at("v"));
        vp.vstar = kc_from_json(val.at("vstar"));
    }
    for (auto& [key, val] : j["m_sums"].items()) e.st_.m_sums[std::stoi(key)] = kc_from_json(val);

    const json& checks = j["checks"];
    {
        const json& p = checks.at("parity");
        e.parity_.s_pos_viol = opt_from_json(p.at("s_pos"));
        e.parity_.s_sqrt_viol = opt_from_json(p.at("s_sqrt"));
        e.parity_.s_cap_viol = opt_from_json(p.at("s_cap"));
        e.parity_.t_neg_viol = opt_from_json(p.at("t_neg"));
        e.parity_.t_lo_viol = opt_from_json(p.at("t_lo"));
        e.parity_.t_hi_viol = opt_from_json(p.at("t_hi"));
        e.parity_.t_flags.clear();
        for (const auto& f : p.at("t_flags")) e.parity_.t_flags.push_back(parse_scaled_u64(f.get<std::string>()));
        if (!p.at("max").is_null()) {
            e.parity_.have_max = true;
            e.parity_.max_x = parse_scaled_u64(p.at("max").at(0).get<std::string>());
            e.parity_.max_s = i64_from_json(p.at("max").at(1));
        }
        if (!p.at("min").is_null()) {
            e.parity_.have_min = true;
            e.parity_.min_x = parse_scaled_u64(p.at("min").at(0).get<std::string>());
            e.parity_.min_s = i64_from_json(p.at("min").at(1));
        }
    }
    if (cfg.conj11) e.pow2_.first_violation = opt_from_json(checks.at("pow2").at("first_violation"));
    for (auto& [m, chk] : e.residue_checks_) {
        const json& c = checks.at("conj12:" + std::to_string(m));
        chk.first_violation = opt_from_json(c.at("first_violation"));
        chk.boundary_seen = c.at("boundary_seen").get<bool>();
        chk.boundary_fails = c.at("boundary_fails").get<bool>();
        chk.boundary_count = parse_scaled_u64(c.at("boundary_count").get<std::string>());
    }
    for (auto& [d, chk] : e.char_checks_) {
        const json& c = checks.at("conj13:" + std::to_string(d));
        chk.first_violation = opt_from_json(c.at("first_violation"));
        chk.boundary_seen = c.at("boundary_seen").get<bool>();
        chk.boundary_value = i64_from_json(c.at("boundary_value"));
    }

    e.samples_.clear();
    for (const auto& row : j["samples"]) {
        SampleRow r;
        r.x = parse_scaled_u64(row.at(0).get<std::string>());
        r.claim = row.at(1).get<std::string>();
        r.re = hex_to_double(row.at(2).get<std::string>());
        r.im = hex_to_double(row.at(3).get<std::string>());
        e.samples_.push_back(r);
    }
    return e;
}

ScanEngine ScanEngine::load_checkpoint_file(const std::string& path, const ScanConfig& cfg) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("checkpoint load-error: ") + e.what());
    }
    return load_checkpoint_json(text, cfg);
}

}  // namespace omegalab
