#pragma once
#include <optional>
#include <string>
#include <vector>

#include "omegalab/common.hpp"

namespace omegalab {

enum class Command {
    SieveSelftest,
    Hypothesis11,
    Extrema,
    Conjecture11,
    Conjecture12,
    Conjecture13,
    Quadratic,
    Identities,
    Constants,
    Asymptotics,
    Report,
};

struct RunConfig {
    Command command = Command::Hypothesis11;
    u64 limit = 100'000'000;
    bool limit_set = false;
    u64 block_size = 1ull << 22;
    unsigned thread_count = 1;
    std::vector<u64> sample_points;  // user-provided exact x values
    std::string checkpoint_path;
    u64 checkpoint_every = 64;
    bool resume = false;
    std::string output_dir = ".";
    std::vector<int> m_list;
    std::vector<int> d_list;
    std::vector<int> disc_list;
    u64 prime_limit = 10'000'000;
    int tail_order = 2;
    u64 nmax = 10'000;
    std::vector<std::string> kinds;
    std::optional<cplx> z_override;
    u64 seed = 0;
    bool quiet = false;
    bool partial_product = false;
    std::vector<std::string> report_files;
};

struct HelpRequested {
    std::string text;
};

// Throws HelpRequested for --help, std::invalid_argument (with usage message)
// for anything malformed. Thread count falls back to OMEGA_LAB_THREADS.
RunConfig parse_args(const std::vector<std::string>& args);

// Exit codes: 0 all gated claims hold, 1 operational error, 2 claim violated.
int execute(const RunConfig& cfg);

int cli_main(int argc, char** argv);

}  // namespace omegalab
