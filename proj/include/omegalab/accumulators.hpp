#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omegalab/common.hpp"
#include "omegalab/multiplicative.hpp"
#include "omegalab/report.hpp"
#include "omegalab/sieve.hpp"

namespace omegalab {

// Claim thresholds fixed by the verified tables.
namespace thresholds {
// hypothesis on S(x) and T(x)
inline constexpr u64 kSPositiveFrom = 5;
inline constexpr u64 kSSqrtFrom = 325;
inline constexpr u64 kPow2From = 3078;

// per-m onset for the residue-class claims (m = 19 deliberately absent)
const std::map<int, u64>& residue_onset();

struct CharClaim {
    int d;
    bool negative;   // true: S_d(x) < 0 on the window, false: S_d(x) > 0
    u64 threshold;
};
const std::vector<CharClaim>& char_claims();
}  // namespace thresholds

struct SumState {
    u64 x = 0;
    i64 s_sum = 0;
    Kahan t_sum;
    std::map<int, i64> char_sums;
    std::map<int, std::vector<u64>> residue_counts;
    struct VPair {
        KahanComplex v;
        KahanComplex vstar;
    };
    std::map<int, VPair> v_sums;
    std::map<int, KahanComplex> m_sums;
    i64 pow2_sum = 0;
    Kahan sf_v1;
};

struct ScanConfig {
    u64 limit = 100'000'000;
    u64 block_size = 1ull << 22;
    bool hyp11 = false;    // per-x S/T inequality monitors
    bool extrema = false;  // S(x)/sqrt(x) witnesses
    bool conj11 = false;   // (-2)^Omega bound
    std::vector<int> conj12_m;
    std::map<int, u64> conj12_cap;  // optional per-m upper gate bound (default: limit)
    std::vector<int> conj13_d;
    std::vector<int> vseries_m;
    std::vector<u64> sample_points;

    static std::vector<int> default_conj12_m();  // 3..18 plus 20
    static std::vector<int> default_conj13_d();  // -4,-7,-8,5,-3,-11,24,28
};

// Streams factor-count blocks, in ascending order, into every configured
// accumulator, firing the per-x inequality monitors as it goes. Block
// production may be parallel; application is strictly sequential, so results
// are identical for any worker count.
class ScanEngine {
public:
    explicit ScanEngine(ScanConfig cfg);

    // block.lo must equal state().x + 1
    void update_from_block(const FactorCountBlock& block);

    // sieve + consume blocks from state().x+1 through cfg.limit
    void run(unsigned threads = 1, const std::string& checkpoint_path = "",
             u64 checkpoint_every_blocks = 64, bool quiet = true);

    const ScanConfig& config() const { return cfg_; }
    const SumState& state() const { return st_; }
    const std::vector<SampleRow>& samples() const { return samples_; }
    std::vector<std::string> claim_ids() const;

    std::vector<ThresholdReport> reports() const;

    struct Extrema {
        u64 max_x = 0;
        i64 max_s = 0;
        double max_ratio = 0.0;
        u64 min_x = 0;
        i64 min_s = 0;
        double min_ratio = 0.0;
    };
    Extrema extrema() const;

    const std::vector<u64>& t_boundary_flags() const { return parity_.t_flags; }

    // residue-claim inspection (acceptance checks the boundary failure too)
    struct ResidueOutcome {
        int m = 0;
        u64 onset = 0;
        u64 cap = 0;
        bool checkable = false;
        bool holds = true;
        std::optional<u64> first_violation;
        bool boundary_seen = false;
        bool boundary_fails = false;  // inequality fails at onset-1 (expected)
        u64 boundary_count = 0;
    };
    std::vector<ResidueOutcome> residue_outcomes() const;

    struct CharOutcome {
        int d = 0;
        u64 threshold = 0;
        bool negative = false;
        bool holds = true;
        std::optional<u64> first_violation;
        bool boundary_seen = false;
        i64 boundary_value = 0;  // S_d(threshold - 1)
    };
    std::vector<CharOutcome> char_outcomes() const;

    // Checkpoint: canonical JSON, integers as decimal strings, floats as hex
    // literals, SHA-256 over the canonical payload.
    std::string checkpoint_json() const;
    void save_checkpoint(const std::string& path) const;
    static ScanEngine load_checkpoint_file(const std::string& path, const ScanConfig& cfg);
    static ScanEngine load_checkpoint_json(const std::string& text, const ScanConfig& cfg);

private:
    struct ParityChecks {
        std::optional<u64> s_pos_viol, s_sqrt_viol, s_cap_viol;
        std::optional<u64> t_neg_viol, t_lo_viol, t_hi_viol;
        std::vector<u64> t_flags;
        bool have_max = false;
        u64 max_x = 0;
        i64 max_s = 0;
        bool have_min = false;
        u64 min_x = 0;
        i64 min_s = 0;
    };
    struct ResidueCheck {
        std::optional<u64> first_violation;
        bool boundary_seen = false;
        bool boundary_fails = false;
        u64 boundary_count = 0;
    };
    struct CharCheck {
        std::optional<u64> first_violation;
        bool boundary_seen = false;
        i64 boundary_value = 0;
    };
    struct Pow2Check {
        std::optional<u64> first_violation;
    };

    void parity_pass(const FactorCountBlock& b, const std::vector<u64>& sample_xs);
    void pow2_pass(const FactorCountBlock& b, const std::vector<u64>& sample_xs);
    void residue_pass(int m, const FactorCountBlock& b);
    void char_pass(int d, const FactorCountBlock& b, const std::vector<u64>& sample_xs);
    void vseries_pass(const FactorCountBlock& b, const std::vector<u64>& sample_xs);

    u64 residue_cap(int m) const;

    ScanConfig cfg_;
    SumState st_;
    ParityChecks parity_;
    Pow2Check pow2_;
    std::map<int, ResidueCheck> residue_checks_;
    std::map<int, CharCheck> char_checks_;
    std::map<int, std::vector<i8>> char_tables_;
    std::map<int, RootOfUnityParams> vparams_;
    std::vector<SampleRow> samples_;
};

}  // namespace omegalab
